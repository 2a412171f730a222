#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include "altafini/io.hpp"

namespace altafini::cli {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON renderings

json to_json(const Clustering& b) { return b.values(); }

json to_json(const NegativeCycleCertificate& c) {
    json steps = json::array();
    for (std::size_t k = 0; k < c.length(); ++k) {
        const Vertex a = c.vertices[k], b = c.vertices[k + 1];
        const Vertex from = c.forward[k] ? a : b;
        const Vertex to = c.forward[k] ? b : a;
        steps.push_back({{"from", from + 1},
                         {"to", to + 1},
                         {"sign", std::string(1, to_char(c.signs[k]))},
                         {"direction", c.forward[k] ? "forward" : "backward"}});
    }
    json vertices = json::array();
    for (Vertex v : c.vertices) vertices.push_back(v + 1);
    return {{"vertices", vertices},
            {"steps", steps},
            {"negative_count", c.negative_count()},
            {"directed", c.is_directed()}};
}

json to_json(const LiftedGraphStructure& s, int n) {
    if (s.strongly_connected()) return {{"verdict", "strongly_connected"}};
    auto names = [n](const std::vector<Vertex>& vs) {
        json a = json::array();
        for (Vertex v : vs) a.push_back(lifted_vertex_name(v, n));
        return a;
    };
    return {{"verdict", "two_components"},
            {"component1", names(s.components().first)},
            {"component2", names(s.components().second)}};
}

json to_json(const LimitVerdict& v) {
    json j = {{"kind", to_string(v.kind)},
              {"bipartite", v.is_bipartite()},
              {"residual", v.residual},
              {"level", nullptr},
              {"clustering", nullptr}};
    if (v.kind == LimitKind::nonzero_modulus_consensus) {
        j["level"] = v.level;
        j["clustering"] = to_json(*v.clustering);
    }
    return j;
}

json to_json(const SequenceClassification& c) {
    json windows = json::array();
    for (const auto& w : c.windows) {
        windows.push_back({{"start", w.start},
                           {"length", w.length},
                           {"strongly_connected", true},
                           {"balanced", w.clustering.has_value()},
                           {"clustering", w.clustering ? to_json(*w.clustering) : json(nullptr)}});
    }
    return {{"connectivity", {{"kind", "repeatedly_jointly_strongly_connected"}, {"p", c.p}, {"q", c.q}}},
            {"balance", to_string(c.balance)},
            {"clustering", c.clustering ? to_json(*c.clustering) : json(nullptr)},
            {"prediction", to_string(c.prediction)},
            {"for_almost_all_initial_conditions", c.almost_all},
            {"windows", windows}};
}

json to_json(const RateBound& r) {
    json j = {{"kind", to_string(r.kind)},
              {"rho", r.rho},
              {"delta", r.delta},
              {"beta", r.beta},
              {"p_star", r.p_star},
              {"p_star_min_reading", r.p_star_min},
              {"rho_min_reading", r.rho_min_reading}};
    if (r.kind == RateKind::unbalanced) {
        j["base_p_star"] = r.base_p_star;
        j["c_star"] = r.c_star;
        j["c_star_exact"] = r.c_star_exact;
        j["lifted_p_star_bound_holds"] = r.sanity_bound_holds;
    }
    return j;
}

json to_json(const SpectralReport& r) {
    json roots = json::array();
    for (Vertex v : r.root_class) roots.push_back(v + 1);
    json balance = {{"balanced", r.root_subgraph_balance.balanced()}};
    if (r.root_subgraph_balance.balanced()) {
        balance["clustering"] = to_json(r.root_subgraph_balance.clustering());
    } else {
        balance["certificate"] = to_json(r.root_subgraph_balance.certificate());
    }
    return {{"root_class", roots},
            {"strongly_connected", r.strongly_connected},
            {"root_subgraph_balance", balance},
            {"eigenvalue_magnitudes", r.eigenvalue_magnitudes},
            {"root_block_magnitudes", r.root_block_magnitudes},
            {"rest_block_magnitudes", r.rest_block_magnitudes},
            {"verdict", to_string(r.verdict)},
            {"fixed_vector_residual", r.fixed_vector_residual},
            {"tolerances", {{"unit_eigenvalue", kUnitEigenvalueTolerance}, {"unit_circle_gap", kUnitCircleGap}}}};
}

json analyze_graph(const SignedDigraph& g) {
    const Condensation cond = mutually_reachable_classes(g);
    json comps = json::array(), dag = json::array();
    for (int c = 0; c < cond.count(); ++c) {
        json members = json::array();
        for (Vertex v : cond.components[c]) members.push_back(v + 1);
        comps.push_back(members);
        dag.push_back(cond.successors[c]);
    }
    const auto sources = cond.sources();
    json roots = nullptr;
    if (sources.size() == 1) {
        roots = json::array();
        for (Vertex v : cond.components[sources.front()]) roots.push_back(v + 1);
    }

    json notices = json::object();
    const auto verdict = check_balance(g);
    json balance = {{"balanced", verdict.balanced()}, {"clustering", nullptr}, {"certificate", nullptr}};
    if (verdict.balanced()) balance["clustering"] = to_json(verdict.clustering());
    else balance["certificate"] = to_json(verdict.certificate());

    json directed_cycle = nullptr;
    const bool sc = is_strongly_connected(g);
    if (!sc) {
        notices["negative_directed_cycle"] = "graph is not strongly connected";
    } else if (auto c = find_negative_directed_cycle(g)) {
        directed_cycle = to_json(*c);
    } else {
        notices["negative_directed_cycle"] = "graph is structurally balanced";
    }

    json cls = nullptr;
    if (is_weakly_connected(g)) cls = classify_class(g).label();
    else notices["class"] = "graph is not weakly connected; class is not unique";

    return {{"n", g.vertex_count()},
            {"arc_count", g.arcs().size()},
            {"multidigraph", g.is_multidigraph()},
            {"strongly_connected", sc},
            {"rooted", is_rooted(g)},
            {"weakly_connected", is_weakly_connected(g)},
            {"mutually_reachable_classes", {{"components", comps}, {"condensation", dag}, {"root_class", roots}}},
            {"balance", balance},
            {"negative_directed_cycle", directed_cycle},
            {"class", cls},
            {"notices", notices}};
}

// ---------------------------------------------------------------------------

namespace {

struct GlobalOptions {
    std::uint64_t seed = 0;
    double tol = kDetectionTolerance;
    double row_tol = kDefaultRowSumTolerance;
    std::string out;
    std::string format = "json";
};

struct CommandError {
    int code;
    std::string message;
    json report = nullptr;
};

json signal_summary(const SwitchingSignal& s) {
    const char* mode = s.mode() == SwitchingSignal::Mode::constant ? "constant"
                       : s.mode() == SwitchingSignal::Mode::finite ? "finite"
                                                                    : "eventually_periodic";
    return {{"mode", mode},
            {"n", s.dimension()},
            {"prefix_length", s.prefix_length()},
            {"period_length", s.period_length()},
            {"beta", s.beta()},
            {"extended_by_repetition", s.extended_by_repetition()},
            {"decidable", s.is_decidable()}};
}

json file_input(const std::string& path) {
    return {{"path", path}, {"sha256", io::sha256_hex(io::read_text_file(path))}};
}

json base_report(const char* command, const GlobalOptions& g) {
    return {{"tool", "altafini"},
            {"version", kToolVersion},
            {"command", command},
            {"tolerances", {{"detection", g.tol}, {"row_sum", g.row_tol}, {"zero_threshold", kZeroThreshold}}}};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io::InputError(path + ": cannot open for writing");
    f << text;
}

void emit(const json& report, const GlobalOptions& g, std::ostream& out) {
    const std::string text = report.dump(2) + "\n";
    if (g.out.empty()) out << text;
    else write_text(g.out, text);
}

Vector initial_state(const std::string& x0_file, std::optional<std::uint64_t> seed, int n, json& inputs) {
    if (!x0_file.empty()) {
        inputs["x0"] = file_input(x0_file);
        Vector x = io::read_vector_file(x0_file);
        if (x.size() != n)
            throw io::InputError(x0_file + ": initial state has " + std::to_string(x.size()) +
                                 " entries, signal dimension is " + std::to_string(n));
        return x;
    }
    std::mt19937_64 rng(*seed);
    inputs["x0"] = {{"random_unit_sphere_seed", *seed}};
    return random_unit_vector(n, rng);
}

double lift_deviation(const Trajectory& traj) {
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.lifted.size(); ++k) {
        const Vector& x = traj.states[k];
        const Vector& z = traj.lifted[k];
        const Eigen::Index n = x.size();
        worst = std::max(worst, (z.head(n) - x).cwiseAbs().maxCoeff());
        worst = std::max(worst, (z.tail(n) + x).cwiseAbs().maxCoeff());
    }
    return worst;
}

bool max_abs_nonincreasing(const Trajectory& traj) {
    for (std::size_t k = 1; k < traj.states.size(); ++k)
        if (traj.states[k].cwiseAbs().maxCoeff() > traj.states[k - 1].cwiseAbs().maxCoeff() * (1 + 1e-12) + 1e-300)
            return false;
    return true;
}

json check(const std::string& name, bool passed, json detail) {
    return {{"name", name}, {"passed", passed}, {"detail", std::move(detail)}};
}

std::optional<SpreadMeasure> measure_for(const LimitVerdict& v) {
    if (v.kind == LimitKind::zero_consensus) return SpreadMeasure{std::nullopt};
    if (v.kind == LimitKind::nonzero_modulus_consensus) return SpreadMeasure{v.clustering};
    return std::nullopt;
}

// Which bound applies: every graph balanced w.r.t. one clustering, or every graph unbalanced.
std::optional<RateKind> auto_rate_kind(const SwitchingSignal& s) {
    std::optional<Clustering> common;
    bool all_balanced_common = true, all_unbalanced = true;
    for (const auto& a : s.one_cycle()) {
        const auto v = check_balance(graph_of(a));
        if (v.balanced()) {
            all_unbalanced = false;
            if (!common) common = v.clustering();
            else if (!(*common == v.clustering())) all_balanced_common = false;
        } else {
            all_balanced_common = false;
        }
    }
    if (all_balanced_common) return RateKind::balanced;
    if (all_unbalanced) return RateKind::unbalanced;
    return std::nullopt;
}

json rate_stage(const SwitchingSignal& s, RateKind kind, RateBound& bound) {
    bound = kind == RateKind::balanced ? rate_bound_balanced(s) : rate_bound_unbalanced(s);
    const auto seq = absolute_probability_sequence(s, kind == RateKind::unbalanced);
    double identity = 0.0;
    for (long long t = 1; t <= static_cast<long long>(seq.pis.size()); ++t) {
        const Eigen::RowVectorXd lhs = seq.at(t).transpose();
        const Eigen::RowVectorXd rhs = seq.at(t + 1).transpose() * stochastic_at(s, t, seq.lifted);
        identity = std::max(identity, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return {{"bound", to_json(bound)},
            {"absolute_probability_sequence",
             {{"lifted", seq.lifted},
              {"delta_period", seq.delta},
              {"prefix_min", seq.prefix_min},
              {"identity_residual", identity},
              {"identity_tolerance", 1e-12}}}};
}

// ---------------------------------------------------------------------------
// Commands

int cmd_analyze(const std::string& graph_file, const std::string& matrix_file, const GlobalOptions& g,
                std::ostream& out) {
    json report = base_report("analyze", g);
    SignedDigraph graph(1);
    if (!graph_file.empty()) {
        report["inputs"] = {{"graph", file_input(graph_file)}};
        graph = io::read_graph_file(graph_file);
    } else if (!matrix_file.empty()) {
        report["inputs"] = {{"matrix", file_input(matrix_file)}};
        graph = graph_of(validate(io::read_matrix_file(matrix_file), std::nullopt, g.row_tol));
    } else {
        throw io::InputError("analyze needs --graph or --matrix");
    }
    report["result"] = analyze_graph(graph);
    report["graph"] = io::graph_to_json(graph);
    emit(report, g, out);
    return kOk;
}

int cmd_lift(const std::string& matrix_file, const std::string& out_matrix, const GlobalOptions& g,
             std::ostream& out) {
    json report = base_report("lift", g);
    report["inputs"] = {{"matrix", file_input(matrix_file)}};
    const WeightMatrix a = validate(io::read_matrix_file(matrix_file), std::nullopt, g.row_tol);
    const LiftedMatrix lifted = lift(a);
    const Matrix& m = lifted.entries();
    const double row_dev = (m.rowwise().sum().array() - 1.0).abs().maxCoeff();
    report["dimension"] = lifted.dimension();
    report["row_sum_max_deviation"] = row_dev;
    report["lifted_matrix"] = io::matrix_to_json(m)["entries"];
    report["notices"] = json::object();
    const SignedDigraph graph = graph_of(a);
    if (is_strongly_connected(graph)) {
        report["structure"] = to_json(analyze_lifted_structure(graph), a.dimension());
    } else {
        report["structure"] = nullptr;
        report["notices"]["structure"] = "graph of the matrix is not strongly connected";
    }
    if (!out_matrix.empty()) write_text(out_matrix, io::matrix_to_csv(m));
    if (g.format == "csv") {
        out << io::matrix_to_csv(m);
        if (!g.out.empty()) write_text(g.out, report.dump(2) + "\n");
    } else {
        emit(report, g, out);
    }
    return kOk;
}

struct SimulateArgs {
    std::string signal_file, x0_file, out_trajectory, spread_csv;
    std::optional<std::uint64_t> random_seed;
    long long steps = 0;
};

int cmd_simulate(const SimulateArgs& args, const GlobalOptions& g, std::ostream& out) {
    json report = base_report("simulate", g);
    json inputs = {{"signal", file_input(args.signal_file)}};
    const SwitchingSignal s = io::read_signal_file(args.signal_file, g.row_tol);
    const Vector x1 = initial_state(args.x0_file, args.random_seed.value_or(g.seed), s.dimension(), inputs);
    report["inputs"] = inputs;
    report["signal"] = signal_summary(s);

    Trajectory traj;
    LimitVerdict verdict;
    if (args.steps > 0) {
        traj = simulate(s, x1, args.steps, true);
        verdict = detect_limit(traj, g.tol);
        report["horizon_policy"] = "fixed";
    } else {
        auto run = simulate_adaptive(s, x1, default_horizon(s.dimension(), s.period_length()), kMaxHorizon, g.tol);
        traj = simulate(s, x1, run.trajectory.horizon(), true);
        verdict = run.verdict;
        report["horizon_policy"] = "adaptive";
    }
    report["horizon"] = traj.horizon();
    std::vector<double> final_state(traj.final().data(), traj.final().data() + traj.final().size());
    report["final_state"] = final_state;
    report["verdict"] = to_json(verdict);
    report["final_modulus_spread"] = traj.modulus_spread.back();
    report["final_lifted_spread"] = traj.lifted_spread.back();
    report["lift_consistency_max_deviation"] = lift_deviation(traj);
    report["max_abs_nonincreasing"] = max_abs_nonincreasing(traj);
    report["empirical_rate"] = nullptr;
    report["notices"] = json::object();
    if (auto m = measure_for(verdict)) {
        try {
            report["empirical_rate"] = empirical_rate(traj, *m);
        } catch (const NonContracting& e) {
            report["notices"]["empirical_rate"] = e.what();
        }
    } else {
        report["notices"]["empirical_rate"] = "limit undetermined";
    }

    if (!args.out_trajectory.empty()) {
        std::ofstream f(args.out_trajectory);
        if (!f) throw io::InputError(args.out_trajectory + ": cannot open for writing");
        io::write_trajectory_csv(f, traj);
    }
    if (!args.spread_csv.empty()) {
        std::ofstream f(args.spread_csv);
        if (!f) throw io::InputError(args.spread_csv + ": cannot open for writing");
        io::write_spread_csv(f, traj);
    }
    if (g.format == "csv") {
        io::write_trajectory_csv(out, traj);
        if (!g.out.empty()) write_text(g.out, report.dump(2) + "\n");
    } else {
        emit(report, g, out);
    }
    return kOk;
}

struct ClassifyArgs {
    std::string signal_file;
    std::optional<int> p;
    std::optional<long long> q;
    bool simulate = false;
    int trials = 10;
};

bool verdict_matches(const SequenceClassification& c, const LimitVerdict& v) {
    if (v.kind != c.prediction) return false;
    if (v.kind == LimitKind::nonzero_modulus_consensus) return v.clustering == c.clustering;
    return true;
}

int cmd_classify(const ClassifyArgs& args, const GlobalOptions& g, std::ostream& out) {
    json report = base_report("classify", g);
    report["inputs"] = {{"signal", file_input(args.signal_file)}, {"seed", g.seed}};
    const SwitchingSignal s = io::read_signal_file(args.signal_file, g.row_tol);
    report["signal"] = signal_summary(s);
    report["classification"] = nullptr;
    report["simulation_agreement"] = nullptr;
    SequenceClassification cls;
    try {
        cls = classify_sequence(s, args.p, args.q);
    } catch (const NotJointlyStronglyConnected& e) {
        report["error"] = {{"kind", "NotJointlyStronglyConnected"},
                           {"window_start", e.start()},
                           {"window_length", e.length()},
                           {"message", e.what()}};
        emit(report, g, out);
        throw CommandError{kUndecidable, e.what()};
    } catch (const UndecidableSignal& e) {
        report["error"] = {{"kind", "UndecidableSignal"}, {"message", e.what()}};
        emit(report, g, out);
        throw CommandError{kUndecidable, e.what()};
    }
    report["classification"] = to_json(cls);

    int code = kOk;
    if (args.simulate) {
        std::mt19937_64 rng(g.seed);
        int agree = 0;
        json runs = json::array();
        for (int k = 0; k < args.trials; ++k) {
            const Vector x1 = random_unit_vector(s.dimension(), rng);
            const auto run = simulate_adaptive(s, x1, default_horizon(s.dimension(), cls.p), kMaxHorizon, g.tol);
            const bool ok = verdict_matches(cls, run.verdict);
            agree += ok;
            runs.push_back({{"horizon", run.trajectory.horizon()}, {"verdict", to_json(run.verdict)}, {"agrees", ok}});
        }
        report["simulation_agreement"] = {{"trials", args.trials}, {"agreeing", agree}, {"runs", runs}};
        if (agree != args.trials) code = kCrossCheckFailed;
    }
    emit(report, g, out);
    return code;
}

struct RateArgs {
    std::string signal_file, mode = "auto", trajectory_file;
};

int cmd_rate(const RateArgs& args, const GlobalOptions& g, std::ostream& out) {
    json report = base_report("rate", g);
    json inputs = {{"signal", file_input(args.signal_file)}};
    const SwitchingSignal s = io::read_signal_file(args.signal_file, g.row_tol);
    report["signal"] = signal_summary(s);

    std::optional<RateKind> kind;
    if (args.mode == "balanced") kind = RateKind::balanced;
    else if (args.mode == "unbalanced") kind = RateKind::unbalanced;
    else kind = auto_rate_kind(s);
    report["mode"] = args.mode;
    report["rate"] = nullptr;
    report["empirical"] = nullptr;
    if (!kind) {
        report["inputs"] = inputs;
        report["error"] = "graphs are neither all balanced w.r.t. one clustering nor all unbalanced";
        emit(report, g, out);
        throw CommandError{kUndecidable, "no rate bound applies to this signal"};
    }

    RateBound bound{};
    try {
        report["rate"] = rate_stage(s, *kind, bound);
    } catch (const RateHypothesisViolation& e) {
        json issues = json::array();
        for (const auto& i : e.issues()) issues.push_back({{"t", i.t}, {"reason", i.reason}});
        report["inputs"] = inputs;
        report["error"] = {{"kind", "RateHypothesisViolation"}, {"issues", issues}};
        emit(report, g, out);
        throw CommandError{kUndecidable, e.what()};
    }

    int code = kOk;
    if (!args.trajectory_file.empty()) {
        inputs["trajectory"] = file_input(args.trajectory_file);
        const Trajectory traj = io::read_trajectory_csv(args.trajectory_file);
        SpreadMeasure m{std::nullopt};
        if (*kind == RateKind::balanced) m.clustering = check_balance(graph_of(s.matrix_at(1))).clustering();
        try {
            const double rho_emp = empirical_rate(traj, m);
            report["empirical"] = {{"rho_emp", rho_emp}, {"slack", bound.rho - rho_emp}, {"sound", rho_emp <= bound.rho}};
            if (rho_emp > bound.rho) code = kCrossCheckFailed;
        } catch (const NonContracting& e) {
            report["empirical"] = {{"rho_emp", nullptr}, {"notice", e.what()}};
        }
    }
    report["inputs"] = inputs;
    emit(report, g, out);
    return code;
}

int cmd_spectrum(const std::string& matrix_file, const GlobalOptions& g, std::ostream& out) {
    json report = base_report("spectrum", g);
    report["inputs"] = {{"matrix", file_input(matrix_file)}};
    const WeightMatrix a = validate(io::read_matrix_file(matrix_file), std::nullopt, g.row_tol);
    try {
        report["spectrum"] = to_json(analyze_spectrum(a));
    } catch (const NotRooted& e) {
        report["spectrum"] = nullptr;
        report["error"] = {{"kind", "NotRooted"}, {"message", e.what()}};
        emit(report, g, out);
        throw CommandError{kUndecidable, e.what()};
    }
    const auto radii = spectral_radius_comparison(a);
    report["spectral_radii"] = {{"rho_A", radii.rho_a}, {"rho_abs_A", radii.rho_abs_a}};
    emit(report, g, out);
    return kOk;
}

struct FullArgs {
    std::string signal_file, x0_file, spread_csv;
    long long steps = 0;
};

int cmd_full(const FullArgs& args, const GlobalOptions& g, std::ostream& out) {
    json report = base_report("full", g);
    json inputs = {{"signal", file_input(args.signal_file)}, {"seed", g.seed}};
    const SwitchingSignal s = io::read_signal_file(args.signal_file, g.row_tol);
    const int n = s.dimension();
    report["signal"] = signal_summary(s);

    json stages = {{"analyze", nullptr}, {"lift", nullptr}, {"classify", nullptr},
                   {"simulate", nullptr}, {"rate", nullptr}, {"spectrum", nullptr}};
    json notices = json::object();
    json checks = json::array();
    if (s.extended_by_repetition()) notices["signal"] = "finite signal extended by repeating its last matrix";

    // analyze: every graph of one cycle plus their union.
    {
        const auto cycle = s.one_cycle();
        std::vector<SignedDigraph> graphs;
        json per_time = json::array();
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            graphs.push_back(graph_of(cycle[k]));
            const auto& gk = graphs.back();
            per_time.push_back({{"t", k + 1},
                                {"strongly_connected", is_strongly_connected(gk)},
                                {"class", is_weakly_connected(gk) ? json(classify_class(gk).label()) : json(nullptr)}});
        }
        stages["analyze"] = {{"graphs", per_time}, {"union_over_cycle", analyze_graph(graph_union(graphs))}};
    }

    // classify + lifted structure of every window.
    std::optional<SequenceClassification> cls;
    try {
        cls = classify_sequence(s);
        stages["classify"] = to_json(*cls);
        json lifted = json::array();
        for (const auto& w : cls->windows)
            lifted.push_back({{"start", w.start}, {"length", w.length},
                              {"structure", to_json(joint_lifted_structure(s, w.start, w.length), n)}});
        stages["lift"] = {{"windows", lifted}};
    } catch (const NotJointlyStronglyConnected& e) {
        notices["classify"] = e.what();
        notices["lift"] = "skipped: no jointly strongly connected window structure";
    } catch (const UndecidableSignal& e) {
        notices["classify"] = e.what();
        notices["lift"] = "skipped: signal is undecidable";
    }

    // simulate
    const Vector x1 = initial_state(args.x0_file, g.seed, n, inputs);
    Trajectory traj;
    LimitVerdict verdict;
    if (args.steps > 0) {
        traj = simulate(s, x1, args.steps, true);
        verdict = detect_limit(traj, g.tol);
    } else {
        const int p = cls ? cls->p : s.period_length();
        auto run = simulate_adaptive(s, x1, default_horizon(n, p), kMaxHorizon, g.tol);
        traj = simulate(s, x1, run.trajectory.horizon(), true);
        verdict = run.verdict;
    }
    std::optional<double> rho_emp;
    json sim = {{"horizon", traj.horizon()},
                {"horizon_policy", args.steps > 0 ? "fixed" : "adaptive"},
                {"verdict", to_json(verdict)},
                {"empirical_rate", nullptr},
                {"lift_consistency_max_deviation", lift_deviation(traj)},
                {"max_abs_nonincreasing", max_abs_nonincreasing(traj)}};
    if (auto m = measure_for(verdict)) {
        try {
            rho_emp = empirical_rate(traj, *m);
            sim["empirical_rate"] = *rho_emp;
        } catch (const NonContracting& e) {
            notices["empirical_rate"] = e.what();
        }
    } else {
        notices["empirical_rate"] = "limit undetermined; no contraction to measure";
    }
    stages["simulate"] = sim;
    checks.push_back(check("lift_consistency", lift_deviation(traj) <= 1e-10,
                           {{"max_deviation", lift_deviation(traj)}, {"tolerance", 1e-10}}));
    checks.push_back(check("max_abs_nonincreasing", max_abs_nonincreasing(traj), nullptr));

    if (cls) {
        const bool decided = verdict.kind != LimitKind::undetermined;
        if (decided || args.steps == 0) {
            checks.push_back(check("prediction_vs_simulation", verdict_matches(*cls, verdict),
                                   {{"prediction", to_string(cls->prediction)}, {"simulated", to_string(verdict.kind)}}));
        } else {
            notices["prediction_vs_simulation"] = "fixed horizon too short for a verdict";
        }
    }

    // rate
    if (const auto kind = auto_rate_kind(s)) {
        try {
            RateBound bound{};
            json r = rate_stage(s, *kind, bound);
            if (rho_emp) {
                r["empirical"] = {{"rho_emp", *rho_emp}, {"slack", bound.rho - *rho_emp}};
                checks.push_back(check("rate_bound_vs_empirical", *rho_emp <= bound.rho,
                                       {{"rho", bound.rho}, {"rho_emp", *rho_emp}}));
            }
            if (bound.kind == RateKind::unbalanced)
                checks.push_back(check("lifted_p_star_bound", bound.sanity_bound_holds,
                                       {{"lifted_p_star", bound.p_star}, {"p_star", bound.base_p_star}, {"c_star", bound.c_star}}));
            const double identity = r["absolute_probability_sequence"]["identity_residual"];
            checks.push_back(check("absolute_probability_identity", identity <= 1e-12, {{"residual", identity}}));
            stages["rate"] = r;
        } catch (const RateHypothesisViolation& e) {
            notices["rate"] = std::string("skipped: ") + e.what();
        } catch (const NotIrreducible& e) {
            notices["rate"] = std::string("skipped: ") + e.what();
        }
    } else {
        notices["rate"] = "skipped: graphs are neither all balanced w.r.t. one clustering nor all unbalanced";
    }

    // spectrum (constant signals) and the rank-one transition matrix check.
    if (s.mode() == SwitchingSignal::Mode::constant) {
        const WeightMatrix& a = s.matrix_at(1);
        try {
            const auto spec = analyze_spectrum(a);
            const auto radii = spectral_radius_comparison(a);
            json js = to_json(spec);
            js["spectral_radii"] = {{"rho_A", radii.rho_a}, {"rho_abs_A", radii.rho_abs_a}};
            stages["spectrum"] = js;
            if (cls && spec.strongly_connected) {
                const bool expected_one = cls->prediction == LimitKind::nonzero_modulus_consensus;
                checks.push_back(check("spectrum_vs_classification",
                                       expected_one == (spec.verdict == SpectralVerdict::single_eigenvalue_at_one),
                                       {{"spectral_verdict", to_string(spec.verdict)}}));
            }
        } catch (const NotRooted& e) {
            notices["spectrum"] = std::string("skipped: ") + e.what();
        }
        if (cls && cls->clustering && cls->balance == BalanceKind::repeatedly_jointly_balanced) {
            Matrix phi = Matrix::Identity(n, n);
            long long T = 1;
            const double scale = x1.cwiseAbs().maxCoeff();
            Vector x = x1;
            double residual = rank_one_residual(phi, *cls->clustering);
            for (; T < kMaxHorizon; ++T) {
                phi = a.entries() * phi;
                x = a.entries() * x;
                const auto sp = spread_series(Trajectory{{x}, {}, {0.0}, {0.0}}, SpreadMeasure{cls->clustering});
                if (sp.front() < 1e-10 * std::max(1.0, scale)) break;
            }
            residual = rank_one_residual(phi, *cls->clustering);
            checks.push_back(check("transition_matrix_rank_one", residual <= 1e-6,
                                   {{"horizon", T + 1}, {"residual", residual}, {"tolerance", 1e-6}}));
        }
    } else {
        notices["spectrum"] = "skipped: spectral analysis applies to constant signals";
    }

    // Clustering consistency across graph analysis, classification and simulation.
    if (cls && cls->clustering && verdict.kind == LimitKind::nonzero_modulus_consensus) {
        const auto joint = check_balance(window_union_graph(s, cls->q, cls->p));
        const bool same = joint.balanced() && joint.clustering() == *cls->clustering &&
                          *verdict.clustering == *cls->clustering;
        checks.push_back(check("clustering_consistency", same,
                               {{"classification", to_json(*cls->clustering)},
                                {"simulation", to_json(*verdict.clustering)}}));
    }

    if (!args.spread_csv.empty()) {
        std::ofstream f(args.spread_csv);
        if (!f) throw io::InputError(args.spread_csv + ": cannot open for writing");
        io::write_spread_csv(f, traj);
    }

    bool all_passed = true;
    for (const auto& c : checks) all_passed = all_passed && c["passed"].get<bool>();
    report["inputs"] = inputs;
    report["stages"] = stages;
    report["notices"] = notices;
    report["cross_checks"] = checks;
    report["status"] = all_passed ? "ok" : "cross_check_failed";
    emit(report, g, out);
    return all_passed ? kOk : kCrossCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discrete-time Altafini opinion dynamics on signed digraphs", "altafini"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--seed", g.seed, "Seed for all randomness")->capture_default_str();
    app.add_option("--tol", g.tol, "Relative detection tolerance")->capture_default_str();
    app.add_option("--row-tol", g.row_tol, "Absolute row-sum tolerance for weight matrices")->capture_default_str();
    app.add_option("--out", g.out, "Write the report to this file instead of stdout");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    std::string graph_file, matrix_file, out_matrix;
    auto* analyze = app.add_subcommand("analyze", "Connectivity, balance and class of a signed graph");
    auto* analyze_src = analyze->add_option("--graph", graph_file, "Graph JSON file");
    analyze->add_option("--matrix", matrix_file, "Weight matrix file (CSV or JSON)")->excludes(analyze_src);

    auto* lift_cmd = app.add_subcommand("lift", "Lifted 2n x 2n matrix and its graph structure");
    lift_cmd->add_option("--matrix", matrix_file, "Weight matrix file")->required();
    lift_cmd->add_option("--out-matrix", out_matrix, "Write the lifted matrix as CSV");

    SimulateArgs sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Iterate x(t+1) = A(t) x(t)");
    simulate_cmd->add_option("--signal", sim.signal_file, "Signal JSON file")->required();
    auto* x0_opt = simulate_cmd->add_option("--x0", sim.x0_file, "Initial state file");
    simulate_cmd->add_option("--random-seed", sim.random_seed, "Random unit-sphere initial state")->excludes(x0_opt);
    simulate_cmd->add_option("--steps", sim.steps, "Horizon T (default: adaptive)");
    simulate_cmd->add_option("--out-trajectory", sim.out_trajectory, "Trajectory CSV");
    simulate_cmd->add_option("--out-report", g.out, "Report JSON (same as --out)");
    simulate_cmd->add_option("--spread-csv", sim.spread_csv, "Spread-vs-t CSV for plotting");

    ClassifyArgs cl;
    auto* classify_cmd = app.add_subcommand("classify", "Joint connectivity/balance classification and limit prediction");
    classify_cmd->add_option("--signal", cl.signal_file, "Signal JSON file")->required();
    classify_cmd->add_option("--p", cl.p, "Window length");
    classify_cmd->add_option("--q", cl.q, "First window start");
    classify_cmd->add_flag("--simulate", cl.simulate, "Check the prediction against simulations");
    classify_cmd->add_option("--trials", cl.trials, "Number of simulations with --simulate")->capture_default_str();

    RateArgs ra;
    auto* rate_cmd = app.add_subcommand("rate", "Convergence-rate bounds");
    rate_cmd->add_option("--signal", ra.signal_file, "Signal JSON file")->required();
    rate_cmd->add_option("--mode", ra.mode, "Which bound")->check(CLI::IsMember({"balanced", "unbalanced", "auto"}))->capture_default_str();
    rate_cmd->add_option("--trajectory", ra.trajectory_file, "Trajectory CSV for the empirical rate");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalue analysis of a rooted weight matrix");
    spectrum_cmd->add_option("--matrix", matrix_file, "Weight matrix file")->required();

    FullArgs fa;
    auto* full_cmd = app.add_subcommand("full", "Analyze, classify, simulate, rate and spectrum in one report");
    full_cmd->add_option("--signal", fa.signal_file, "Signal JSON file")->required();
    full_cmd->add_option("--x0", fa.x0_file, "Initial state file (default: random from --seed)");
    full_cmd->add_option("--steps", fa.steps, "Horizon T (default: adaptive)");
    full_cmd->add_option("--spread-csv", fa.spread_csv, "Spread-vs-t CSV for plotting");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    try {
        if (*analyze) return cmd_analyze(graph_file, matrix_file, g, out);
        if (*lift_cmd) return cmd_lift(matrix_file, out_matrix, g, out);
        if (*simulate_cmd) return cmd_simulate(sim, g, out);
        if (*classify_cmd) return cmd_classify(cl, g, out);
        if (*rate_cmd) return cmd_rate(ra, g, out);
        if (*spectrum_cmd) return cmd_spectrum(matrix_file, g, out);
        if (*full_cmd) return cmd_full(fa, g, out);
    } catch (const CommandError& e) {
        err << "error: " << e.message << '\n';
        return e.code;
    } catch (const io::InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const InvalidArgument& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const InternalInconsistency& e) {
        err << "internal cross-check failed: " << e.what() << '\n';
        return kCrossCheckFailed;
    } catch (const PropositionViolation& e) {
        err << "internal cross-check failed: " << e.what() << '\n';
        return kCrossCheckFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace altafini::cli
