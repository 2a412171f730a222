#include "altafini/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <sstream>

namespace altafini::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw InputError(where + ": " + what);
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& token, const std::string& where) {
    std::string t = trim(token);
    if (!t.empty() && t.front() == '+') t.erase(0, 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        fail(where, "cannot parse number '" + trim(token) + "'");
    return v;
}

std::vector<std::vector<double>> parse_csv_rows(const std::string& text, const std::string& name) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::vector<double> row;
        std::size_t start = 0;
        int field = 0;
        for (;;) {
            const auto comma = t.find(',', start);
            const std::string cell = t.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            ++field;
            row.push_back(parse_number(cell, name + " line " + std::to_string(line_no) + " field " +
                                                 std::to_string(field)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            fail(name + " line " + std::to_string(line_no),
                 std::to_string(row.size()) + " entries, expected " + std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    return rows;
}

const json& require(const json& doc, const char* key, const std::string& where) {
    if (!doc.is_object()) fail(where, "expected a JSON object");
    auto it = doc.find(key);
    if (it == doc.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

int require_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<int>();
}

json parse_json_text(const std::string& text, const std::string& name) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(name, std::string("malformed JSON: ") + e.what());
    }
}

bool looks_like_json(const std::filesystem::path& path, const std::string& text) {
    if (path.extension() == ".json") return true;
    const auto first = text.find_first_not_of(" \t\r\n");
    return first != std::string::npos && (text[first] == '{' || text[first] == '[');
}

Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows, const std::string& where) {
    if (rows.empty()) fail(where, "matrix has no rows");
    const std::size_t cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            fail(where, "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                            " entries, expected " + std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix matrix_from_json(const json& doc, const std::string& where) {
    const json& entries = doc.is_object() ? require(doc, "entries", where) : doc;
    if (!entries.is_array()) fail(where, "entries must be an array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const json& r = entries[i];
        const std::string rw = where + ".entries[" + std::to_string(i) + "]";
        if (!r.is_array()) fail(rw, "row must be an array");
        std::vector<double> row;
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (!r[j].is_number()) fail(rw + "[" + std::to_string(j) + "]", "expected a number");
            row.push_back(r[j].get<double>());
        }
        rows.push_back(std::move(row));
    }
    return rows_to_matrix(rows, where);
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path.string() + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// Graphs

SignedDigraph parse_graph(const json& doc) {
    const std::string where = "graph";
    const int n = require_int(require(doc, "n", where), where + ".n");
    if (n < 1) fail(where + ".n", "vertex count must be >= 1");

    bool explicit_self = false;
    if (auto it = doc.find("self_arcs"); it != doc.end()) {
        if (!it->is_string() || (*it != "implicit" && *it != "explicit"))
            fail(where + ".self_arcs", "expected \"implicit\" or \"explicit\"");
        explicit_self = *it == "explicit";
    }

    const json& arcs = require(doc, "arcs", where);
    if (!arcs.is_array()) fail(where + ".arcs", "expected an array");
    std::vector<SignedArc> parsed;
    std::vector<bool> self_listed(static_cast<std::size_t>(n), false);
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const std::string aw = where + ".arcs[" + std::to_string(k) + "]";
        const int from = require_int(require(arcs[k], "from", aw), aw + ".from");
        const int to = require_int(require(arcs[k], "to", aw), aw + ".to");
        const json& sign = require(arcs[k], "sign", aw);
        if (!sign.is_string() || (sign != "+" && sign != "-"))
            fail(aw + ".sign", "expected \"+\" or \"-\"");
        if (from < 1 || from > n) fail(aw + ".from", "vertex id outside [1," + std::to_string(n) + "]");
        if (to < 1 || to > n) fail(aw + ".to", "vertex id outside [1," + std::to_string(n) + "]");
        const Sign s = sign == "+" ? Sign::positive : Sign::negative;
        if (from == to) {
            if (s == Sign::negative) fail(aw, "negative self-arc");
            self_listed[from - 1] = true;
        }
        parsed.push_back({from - 1, to - 1, s});
    }
    if (explicit_self) {
        for (int v = 0; v < n; ++v)
            if (!self_listed[v])
                fail(where + ".arcs", "self_arcs is \"explicit\" but vertex " + std::to_string(v + 1) +
                                          " has no listed self-arc");
    }
    return SignedDigraph(n, parsed);
}

SignedDigraph read_graph_file(const std::filesystem::path& path) {
    try {
        return parse_graph(parse_json_text(read_text_file(path), path.string()));
    } catch (const InputError& e) {
        if (std::string(e.what()).rfind(path.string(), 0) == 0) throw;
        throw InputError(path.string() + ": " + e.what());
    }
}

json graph_to_json(const SignedDigraph& g) {
    json arcs = json::array();
    for (const auto& a : g.proper_arcs())
        arcs.push_back({{"from", a.from + 1}, {"to", a.to + 1}, {"sign", std::string(1, to_char(a.sign))}});
    return {{"n", g.vertex_count()}, {"self_arcs", "implicit"}, {"arcs", std::move(arcs)}};
}

// ---------------------------------------------------------------------------
// Matrices

Matrix parse_matrix_csv(const std::string& text) { return rows_to_matrix(parse_csv_rows(text, "matrix"), "matrix"); }

Matrix parse_matrix_json(const json& doc) { return matrix_from_json(doc, "matrix"); }

Matrix read_matrix_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    if (looks_like_json(path, text)) return matrix_from_json(parse_json_text(text, path.string()), path.string());
    return rows_to_matrix(parse_csv_rows(text, path.string()), path.string());
}

std::string matrix_to_csv(const Matrix& m) {
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(std::move(r));
    }
    return {{"entries", std::move(rows)}};
}

// ---------------------------------------------------------------------------
// Signals

namespace {

WeightMatrix load_weight_matrix(const json& item, const std::filesystem::path& base_dir,
                                std::optional<double> beta, double tol, const std::string& where) {
    Matrix m;
    if (item.is_string()) {
        const std::filesystem::path p = base_dir / item.get<std::string>();
        m = read_matrix_file(p);
    } else {
        m = matrix_from_json(item, where);
    }
    try {
        return validate(m, beta, tol);
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

std::vector<WeightMatrix> load_list(const json& doc, const char* key, const std::filesystem::path& base_dir,
                                    std::optional<double> beta, double tol, bool required) {
    std::vector<WeightMatrix> out;
    auto it = doc.find(key);
    if (it == doc.end()) {
        if (required) fail("signal", std::string("missing field \"") + key + "\"");
        return out;
    }
    if (!it->is_array()) fail(std::string("signal.") + key, "expected an array of matrices");
    for (std::size_t k = 0; k < it->size(); ++k)
        out.push_back(load_weight_matrix((*it)[k], base_dir, beta, tol,
                                         std::string("signal.") + key + "[" + std::to_string(k) + "]"));
    return out;
}

}  // namespace

SwitchingSignal parse_signal(const json& doc, const std::filesystem::path& base_dir, double row_tol) {
    const json& mode = require(doc, "mode", "signal");
    if (!mode.is_string()) fail("signal.mode", "expected a string");
    std::optional<double> beta;
    if (auto it = doc.find("beta"); it != doc.end()) {
        if (!it->is_number() || !(it->get<double>() > 0.0)) fail("signal.beta", "expected a positive number");
        beta = it->get<double>();
    }

    try {
        if (mode == "constant") {
            if (auto it = doc.find("matrix"); it != doc.end())
                return SwitchingSignal::constant(load_weight_matrix(*it, base_dir, beta, row_tol, "signal.matrix"));
            auto list = load_list(doc, "matrices", base_dir, beta, row_tol, true);
            if (list.size() != 1) fail("signal.matrices", "constant mode takes exactly one matrix");
            return SwitchingSignal::constant(std::move(list.front()));
        }
        if (mode == "finite") {
            bool extend = true;
            if (auto it = doc.find("extend"); it != doc.end()) {
                if (!it->is_boolean()) fail("signal.extend", "expected a boolean");
                extend = it->get<bool>();
            }
            auto list = load_list(doc, "matrices", base_dir, beta, row_tol, true);
            if (list.empty()) fail("signal.matrices", "finite mode needs at least one matrix");
            return SwitchingSignal::finite(std::move(list), extend);
        }
        if (mode == "eventually_periodic") {
            auto prefix = load_list(doc, "prefix", base_dir, beta, row_tol, false);
            auto period = load_list(doc, "period", base_dir, beta, row_tol, true);
            if (period.empty()) fail("signal.period", "period must be non-empty");
            return SwitchingSignal::eventually_periodic(std::move(prefix), std::move(period));
        }
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        fail("signal", e.what());
    }
    fail("signal.mode", "unknown mode \"" + mode.get<std::string>() + "\"");
}

SwitchingSignal read_signal_file(const std::filesystem::path& path, double row_tol) {
    const json doc = parse_json_text(read_text_file(path), path.string());
    try {
        return parse_signal(doc, path.parent_path(), row_tol);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

json signal_to_json(const SwitchingSignal& s) {
    auto list = [](const std::vector<WeightMatrix>& ms) {
        json a = json::array();
        for (const auto& m : ms) a.push_back(matrix_to_json(m.entries()));
        return a;
    };
    switch (s.mode()) {
        case SwitchingSignal::Mode::constant:
            return {{"mode", "constant"}, {"matrices", list(s.period())}};
        case SwitchingSignal::Mode::finite:
            return {{"mode", "finite"}, {"matrices", list(s.one_cycle())}, {"extend", s.is_decidable()}};
        case SwitchingSignal::Mode::eventually_periodic:
            return {{"mode", "eventually_periodic"}, {"prefix", list(s.prefix())}, {"period", list(s.period())}};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Vectors and trajectories

Vector read_vector_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    std::vector<double> values;
    if (looks_like_json(path, text)) {
        const json doc = parse_json_text(text, path.string());
        const json& arr = doc.is_object() ? require(doc, "x0", path.string()) : doc;
        if (!arr.is_array()) fail(path.string(), "expected an array of numbers");
        for (std::size_t k = 0; k < arr.size(); ++k) {
            if (!arr[k].is_number()) fail(path.string() + "[" + std::to_string(k) + "]", "expected a number");
            values.push_back(arr[k].get<double>());
        }
    } else {
        const auto rows = parse_csv_rows(text, path.string());
        const bool column = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.size() == 1; });
        if (rows.size() == 1) values = rows.front();
        else if (column)
            for (const auto& r : rows) values.push_back(r.front());
        else
            fail(path.string(), "initial state must be a single row or a single column");
    }
    if (values.empty()) fail(path.string(), "initial state is empty");
    return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    const Eigen::Index n = traj.states.empty() ? 0 : traj.states.front().size();
    os << 't';
    for (Eigen::Index i = 0; i < n; ++i) os << ",x" << i + 1;
    os << '\n';
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        os << k + 1;
        for (Eigen::Index i = 0; i < n; ++i) os << ',' << format_double(traj.states[k](i));
        os << '\n';
    }
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::string text = read_text_file(path);
    const auto first_nl = text.find('\n');
    const std::string header = trim(text.substr(0, first_nl));
    if (header.rfind("t,", 0) != 0) fail(path.string() + " line 1", "expected header t,x1,...");
    const auto rows = parse_csv_rows(first_nl == std::string::npos ? "" : text.substr(first_nl + 1), path.string());
    Trajectory traj;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].size() < 2) fail(path.string() + " line " + std::to_string(k + 2), "too few columns");
        Vector x(static_cast<Eigen::Index>(rows[k].size() - 1));
        for (std::size_t i = 1; i < rows[k].size(); ++i) x(static_cast<Eigen::Index>(i - 1)) = rows[k][i];
        const Vector m = x.cwiseAbs();
        traj.modulus_spread.push_back(m.maxCoeff() - m.minCoeff());
        traj.lifted_spread.push_back(2.0 * m.maxCoeff());
        traj.states.push_back(std::move(x));
    }
    if (traj.states.empty()) fail(path.string(), "trajectory has no rows");
    return traj;
}

void write_spread_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,modulus_spread,lifted_spread\n";
    for (std::size_t k = 0; k < traj.states.size(); ++k)
        os << k + 1 << ',' << format_double(traj.modulus_spread[k]) << ','
           << format_double(traj.lifted_spread[k]) << '\n';
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

}  // namespace altafini::io
