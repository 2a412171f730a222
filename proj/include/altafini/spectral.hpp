#pragma once

#include <complex>
#include <vector>

#include "altafini/errors.hpp"
#include "altafini/signed_graph.hpp"
#include "altafini/weight_model.hpp"

namespace altafini {

class NotRooted : public Error {
public:
    using Error::Error;
};

/// The eigenvalue dichotomy for rooted graphs did not hold. Never expected to fire.
class PropositionViolation : public Error {
public:
    PropositionViolation(const std::string& what, std::complex<double> eigenvalue);
    std::complex<double> eigenvalue() const noexcept { return eigenvalue_; }

private:
    std::complex<double> eigenvalue_;
};

/// |lambda - 1| at or below this counts as an eigenvalue at one.
inline constexpr double kUnitEigenvalueTolerance = 1e-9;
/// Every other eigenvalue must have magnitude below 1 - kUnitCircleGap.
inline constexpr double kUnitCircleGap = 1e-9;
// analyze_spectrum widens both by n times the largest deviation of an absolute row sum from 1.

/// All eigenvalues of a real square matrix: Householder reduction to upper Hessenberg form
/// followed by the Francis double-shift QR iteration.
std::vector<std::complex<double>> eigenvalues(const Matrix& m);
/// Eigenvalue magnitudes sorted in decreasing order.
std::vector<double> eigenvalue_magnitudes(const Matrix& m);
double spectral_radius(const Matrix& m);

/// The unique source component of the condensation; throws NotRooted.
std::vector<Vertex> root_class(const SignedDigraph& g);

enum class SpectralVerdict { all_inside_unit_disk, single_eigenvalue_at_one };
const char* to_string(SpectralVerdict v) noexcept;

struct SpectralReport {
    std::vector<Vertex> root_class;
    BalanceVerdict root_subgraph_balance;
    std::vector<double> eigenvalue_magnitudes;  ///< decreasing
    SpectralVerdict verdict;
    bool strongly_connected = false;
    /// |v'A - v'|_inf for the left fixed vector built from the root block; only meaningful
    /// for single_eigenvalue_at_one, zero otherwise.
    double fixed_vector_residual = 0.0;
    std::vector<double> root_block_magnitudes;  ///< eigenvalues of the R x R block
    std::vector<double> rest_block_magnitudes;  ///< eigenvalues of the block outside R
};

/// Eigenstructure of a matrix whose graph is rooted (not necessarily strongly connected).
/// Throws NotRooted, or PropositionViolation if the dichotomy fails numerically.
SpectralReport analyze_spectrum(const WeightMatrix& a);

struct SpectralRadii {
    double rho_a;
    double rho_abs_a;
};

/// rho(A) and rho(|A|); throws PropositionViolation if rho(A) > rho(|A|) + 1e-9.
SpectralRadii spectral_radius_comparison(const WeightMatrix& a);

}  // namespace altafini
