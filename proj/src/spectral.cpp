#include "altafini/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "altafini/rate.hpp"

namespace altafini {

PropositionViolation::PropositionViolation(const std::string& what, std::complex<double> eigenvalue)
    : Error([&] {
          std::ostringstream os;
          os.precision(17);
          os << what << " (eigenvalue " << eigenvalue.real() << (eigenvalue.imag() < 0 ? "" : "+")
             << eigenvalue.imag() << "i, magnitude " << std::abs(eigenvalue) << ")";
          return os.str();
      }()),
      eigenvalue_(eigenvalue) {}

namespace {

void to_hessenberg(Matrix& h) {
    const Eigen::Index n = h.rows();
    for (Eigen::Index k = 0; k + 2 < n; ++k) {
        Vector v = h.col(k).tail(n - k - 1);
        const double norm = v.norm();
        if (norm == 0.0) continue;
        const double alpha = v(0) > 0 ? -norm : norm;
        v(0) -= alpha;
        const double vnorm = v.norm();
        if (vnorm == 0.0) continue;
        v /= vnorm;
        auto rows = h.bottomRows(n - k - 1);
        rows -= 2.0 * v * (v.transpose() * rows);
        auto cols = h.rightCols(n - k - 1);
        cols -= 2.0 * (cols * v) * v.transpose();
    }
}

double sign_of(double magnitude, double s) { return s >= 0 ? std::abs(magnitude) : -std::abs(magnitude); }

// Francis double-shift QR on an upper Hessenberg matrix, deflating from the bottom.
std::vector<std::complex<double>> hessenberg_qr(Matrix a) {
    const int n = static_cast<int>(a.rows());
    std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
    const double eps = std::numeric_limits<double>::epsilon();

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l;
        do {
            for (l = nn; l > 0; --l) {
                double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a(l, l - 1)) <= eps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = a(nn, nn);
            if (l == nn) {
                w[nn--] = x + t;
                continue;
            }
            double y = a(nn - 1, nn - 1);
            double ww = a(nn, nn - 1) * a(nn - 1, nn);
            if (l == nn - 1) {
                const double p = 0.5 * (y - x);
                const double q = p * p + ww;
                double z = std::sqrt(std::abs(q));
                x += t;
                if (q >= 0.0) {
                    z = p + sign_of(z, p);
                    w[nn - 1] = w[nn] = x + z;
                    if (z != 0.0) w[nn] = x - ww / z;
                } else {
                    w[nn] = std::complex<double>(x + p, -z);
                    w[nn - 1] = std::conj(w[nn]);
                }
                nn -= 2;
                continue;
            }

            if (its == 60) throw InternalInconsistency("QR iteration did not converge");
            if (its == 10 || its == 20 || its == 40) {
                // Exceptional shift.
                t += x;
                for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                y = x = 0.75 * s;
                ww = -0.4375 * s * s;
            }
            ++its;

            int m;
            double p = 0, q = 0, r = 0, z;
            for (m = nn - 2; m >= l; --m) {
                z = a(m, m);
                r = x - z;
                double s = y - z;
                p = (r * s - ww) / a(m + 1, m) + a(m, m + 1);
                q = a(m + 1, m + 1) - z - r - s;
                r = a(m + 2, m + 1);
                s = std::abs(p) + std::abs(q) + std::abs(r);
                p /= s;
                q /= s;
                r /= s;
                if (m == l) break;
                const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) +
                                                std::abs(a(m + 1, m + 1)));
                if (u <= eps * v) break;
            }
            for (int i = m; i < nn - 1; ++i) {
                a(i + 2, i) = 0.0;
                if (i != m) a(i + 2, i - 1) = 0.0;
            }
            for (int k = m; k < nn; ++k) {
                if (k != m) {
                    p = a(k, k - 1);
                    q = a(k + 1, k - 1);
                    r = 0.0;
                    if (k + 1 != nn) r = a(k + 2, k - 1);
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x != 0.0) {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                if (s == 0.0) continue;
                if (k == m) {
                    if (l != m) a(k, k - 1) = -a(k, k - 1);
                } else {
                    a(k, k - 1) = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;
                for (int j = k; j <= nn; ++j) {
                    p = a(k, j) + q * a(k + 1, j);
                    if (k + 1 != nn) {
                        p += r * a(k + 2, j);
                        a(k + 2, j) -= p * z;
                    }
                    a(k + 1, j) -= p * y;
                    a(k, j) -= p * x;
                }
                const int mmin = nn < k + 3 ? nn : k + 3;
                for (int i = l; i <= mmin; ++i) {
                    p = x * a(i, k) + y * a(i, k + 1);
                    if (k + 1 != nn) {
                        p += z * a(i, k + 2);
                        a(i, k + 2) -= p * r;
                    }
                    a(i, k + 1) -= p * q;
                    a(i, k) -= p;
                }
            }
        } while (l < nn - 1);
    }
    return w;
}

Matrix submatrix(const Matrix& m, const std::vector<Vertex>& rows, const std::vector<Vertex>& cols) {
    Matrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
    return out;
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("eigenvalues of a non-square matrix");
    if (m.rows() == 0) return {};
    Matrix h = m;
    to_hessenberg(h);
    return hessenberg_qr(std::move(h));
}

std::vector<double> eigenvalue_magnitudes(const Matrix& m) {
    std::vector<double> out;
    for (const auto& z : eigenvalues(m)) out.push_back(std::abs(z));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double spectral_radius(const Matrix& m) {
    const auto mags = eigenvalue_magnitudes(m);
    return mags.empty() ? 0.0 : mags.front();
}

std::vector<Vertex> root_class(const SignedDigraph& g) {
    const Condensation c = mutually_reachable_classes(g);
    const auto sources = c.sources();
    if (sources.size() != 1)
        throw NotRooted("graph is not rooted: condensation has " + std::to_string(sources.size()) +
                        " source components");
    return c.components[sources.front()];
}

const char* to_string(SpectralVerdict v) noexcept {
    return v == SpectralVerdict::all_inside_unit_disk ? "all_inside_unit_disk"
                                                      : "single_eigenvalue_at_one";
}

SpectralReport analyze_spectrum(const WeightMatrix& a) {
    const SignedDigraph g = graph_of(a);
    const int n = a.dimension();
    std::vector<Vertex> roots = root_class(g);
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v)
        if (!std::binary_search(roots.begin(), roots.end(), v)) rest.push_back(v);

    SpectralReport report{roots, check_balance(g.induced(roots)), {}, SpectralVerdict::all_inside_unit_disk, false, 0.0, {}, {}};
    report.strongly_connected = rest.empty();

    // With the roots ordered first, A = [[B, 0], [C, D]].
    for (Vertex i : roots)
        for (Vertex j : rest)
            if (a(i, j) != 0.0)
                throw PropositionViolation("root row " + std::to_string(i + 1) +
                                               " depends on non-root vertex " + std::to_string(j + 1),
                                           a(i, j));

    // Inputs accepted under a loose row-sum tolerance move the eigenvalues by about that much.
    const double row_dev = (a.entries().cwiseAbs().rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double unit_tol = kUnitEigenvalueTolerance + n * row_dev;
    const double gap = kUnitCircleGap + n * row_dev;

    const auto all = eigenvalues(a.entries());
    const Matrix root_block = submatrix(a.entries(), roots, roots);
    const Matrix rest_block = submatrix(a.entries(), rest, rest);
    report.eigenvalue_magnitudes = eigenvalue_magnitudes(a.entries());
    report.root_block_magnitudes = eigenvalue_magnitudes(root_block);
    report.rest_block_magnitudes = eigenvalue_magnitudes(rest_block);

    for (const auto& lambda : eigenvalues(rest_block))
        if (std::abs(lambda) >= 1.0 - gap)
            throw PropositionViolation("block outside the root class has an eigenvalue on the unit circle",
                                       lambda);

    std::vector<double> merged = report.root_block_magnitudes;
    merged.insert(merged.end(), report.rest_block_magnitudes.begin(), report.rest_block_magnitudes.end());
    std::sort(merged.begin(), merged.end(), std::greater<>());
    for (std::size_t k = 0; k < merged.size(); ++k)
        if (std::abs(merged[k] - report.eigenvalue_magnitudes[k]) > 1e-8)
            throw InternalInconsistency("block eigenvalues do not match the full spectrum");

    int at_one = 0;
    std::complex<double> offender = 0.0;
    for (const auto& lambda : all) {
        if (std::abs(lambda - 1.0) <= unit_tol) {
            ++at_one;
        } else if (std::abs(lambda) >= 1.0 - gap) {
            offender = lambda;
            throw PropositionViolation("eigenvalue on the unit circle other than 1", offender);
        }
    }

    if (report.root_subgraph_balance.balanced()) {
        if (at_one != 1)
            throw PropositionViolation("balanced root class needs exactly one eigenvalue at 1, found " +
                                           std::to_string(at_one),
                                       all.empty() ? 0.0 : all.front());
        // Left fixed vector: b o pi on the roots, zero elsewhere, pi the Perron vector of |B|.
        const Clustering& b = report.root_subgraph_balance.clustering();
        const Vector pi = left_perron_vector(root_block.cwiseAbs());
        Vector v = Vector::Zero(n);
        for (std::size_t k = 0; k < roots.size(); ++k) v(roots[k]) = b[static_cast<Vertex>(k)] * pi(k);
        report.fixed_vector_residual =
            (v.transpose() * a.entries() - v.transpose()).cwiseAbs().maxCoeff();
        if (report.fixed_vector_residual > unit_tol)
            throw PropositionViolation("left fixed vector residual too large", 1.0);
        report.verdict = SpectralVerdict::single_eigenvalue_at_one;
    } else {
        if (at_one != 0)
            throw PropositionViolation("unbalanced root class must not have an eigenvalue at 1", 1.0);
        report.verdict = SpectralVerdict::all_inside_unit_disk;
    }
    return report;
}

SpectralRadii spectral_radius_comparison(const WeightMatrix& a) {
    SpectralRadii r{spectral_radius(a.entries()), spectral_radius(abs(a))};
    if (r.rho_a > r.rho_abs_a + 1e-9)
        throw PropositionViolation("spectral radius of A exceeds that of |A|", r.rho_a);
    return r;
}

}  // namespace altafini
