#include "zk/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "zk/continuation.hpp"
#include "zk/csv.hpp"
#include "zk/errors.hpp"
#include "zk/estimates.hpp"
#include "zk/snapshot.hpp"
#include "zk/spacetime.hpp"

namespace zk {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void validate_keys(const Config& c, const std::string& kind,
                   const std::vector<std::string>& required,
                   const std::vector<std::string>& optional) {
    for (const auto& k : required)
        if (!c.has(k)) throw ConfigError("missing required config key for " + kind + ": " + k);
    for (const auto& k : c.keys()) {
        bool known = std::find(required.begin(), required.end(), k) != required.end() ||
                     std::find(optional.begin(), optional.end(), k) != optional.end();
        if (!known) throw ConfigError("unknown config key for " + kind + ": " + k);
    }
}

Grid grid_from(const Config& c, double def_L, long def_M) {
    return Grid(c.get_double("grid.L", def_L),
                static_cast<int>(c.get_int("grid.M", def_M)));
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
    std::vector<double> out;
    std::string cur;
    std::stringstream ss(text);
    while (std::getline(ss, cur, ',')) {
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(cur, &pos);
        } catch (const std::exception&) {
            throw ConfigError("unparsable list entry for " + key + ": " + cur);
        }
        while (pos < cur.size() && std::isspace(static_cast<unsigned char>(cur[pos]))) ++pos;
        if (pos != cur.size())
            throw ConfigError("unparsable list entry for " + key + ": " + cur);
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("empty list for " + key);
    return out;
}

// Collects artifacts in memory so the manifest can checksum exact bytes, then
// writes everything in one pass.
struct Emitter {
    std::string dir;
    std::vector<std::pair<std::string, std::string>> files;

    void add(const std::string& name, std::string bytes) {
        files.emplace_back(name, std::move(bytes));
    }

    void add_state(const std::string& name, const Grid& g, double t,
                   const std::vector<const SpectralField*>& fields) {
        std::ostringstream out(std::ios::binary);
        zk1::write_record(out, g, t, fields);
        add(name, out.str());
    }

    std::vector<std::string> flush(const ExperimentSpec& spec) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());

        std::string manifest;
        manifest += "kind = " + spec.kind + "\n";
        manifest += "seed = " + std::to_string(spec.seed) + "\n";
        manifest += "config_hash = " + spec.config.hash_hex() + "\n";
        for (const auto& [name, bytes] : files)
            manifest += "artifact = " + name + " bytes=" + std::to_string(bytes.size()) +
                        " fnv1a=" + fnv1a_hex(bytes) + "\n";
        files.emplace_back("manifest.txt", manifest);

        std::vector<std::string> names;
        for (const auto& [name, bytes] : files) {
            std::string path = dir + "/" + name;
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out) throw IoError("cannot open for writing: " + path);
            out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            if (!out) throw IoError("short write: " + path);
            names.push_back(name);
        }
        return names;
    }
};

std::string line(const std::string& key, double v) { return key + " = " + format_double(v) + "\n"; }
std::string line(const std::string& key, const std::string& v) { return key + " = " + v + "\n"; }

EstimateParams params_from(const Config& c, EstimateParams p) {
    p.s = c.get_double("s", p.s);
    p.k = c.get_double("k", p.k);
    p.l = c.get_double("l", p.l);
    p.a = c.get_double("a", p.a);
    p.a1 = c.get_double("a1", p.a1);
    p.a2 = c.get_double("a2", p.a2);
    return p;
}

// ---------------------------------------------------------------------------

// Seeded data for solver experiments: "smooth" (default) keeps the spectrum
// inside the dealias band so conservation checks are free of aliasing floors;
// "rough" exercises genuinely H^s data.
SecondOrderData data_from_profile(const Config& c, const Grid& g, uint64_t seed,
                                  double default_amplitude, double default_width = 1.2) {
    std::string profile = c.get_string("profile", "smooth");
    if (profile == "smooth") {
        SmoothDataConfig sc;
        sc.amplitude = c.get_double("amplitude", default_amplitude);
        sc.width = c.get_double("width", default_width);
        return smooth_data(g, sc, seed);
    }
    if (profile == "rough") {
        RoughDataConfig rc;
        rc.s = c.get_double("s", 0.95);
        rc.amplitude = c.get_double("amplitude", default_amplitude);
        return rough_data(g, rc, seed);
    }
    throw ConfigError("profile must be smooth or rough, got: " + profile);
}

ExperimentResult run_conservation(const ExperimentSpec& spec, Emitter& em) {
    const Config& c = spec.config;
    validate_keys(c, spec.kind, {},
                  {"grid.L", "grid.M", "T", "dt", "stride", "s", "amplitude", "c1", "profile",
                   "width"});
    Grid g = grid_from(c, 64.0 * std::numbers::pi, 512);
    double T = c.get_double("T", 1.0);
    double dt = c.get_double("dt", 1.0 / 1024.0);
    long stride = c.get_int("stride", 16);
    double c1 = c.get_double("c1", 1.0);

    // Defaults put the splitting error well above the aliasing floor of the
    // cascade tail while keeping drifts far below the conservation targets.
    SecondOrderData data = data_from_profile(c, g, spec.seed, 4.0, 0.85);
    FirstOrderState start = to_first_order(data);

    double mass0 = mass(start.u);
    EnergyBreakdown e0 = [&] {
        SecondOrderView v = from_first_order(start);
        return energy(v.u, v.n, v.n_t);
    }();
    AprioriBounds ab = apriori_bounds(e0.total, mass0, c1);

    TrajectorySlice traj = evolve_strang(start, T, dt, static_cast<int>(stride));

    CsvWriter csv({"t", "mass", "kinetic", "wave", "coupling", "energy", "mass_drift",
                   "energy_drift", "gn_lhs", "gn_rhs", "bounds_ok"});
    double max_mass_drift = 0.0;
    double max_energy_drift = 0.0;
    bool bounds_all = true;
    for (size_t k = 0; k < traj.states.size(); ++k) {
        const FirstOrderState& st = traj.states[k];
        SecondOrderView v = from_first_order(st);
        EnergyBreakdown e = energy(v.u, v.n, v.n_t);
        double m = mass(st.u);
        CouplingBound gn = gn_coupling_bound(v.u, v.n);
        bool ok = e.kinetic <= ab.bound_ux_sq && 2.0 * e.wave <= ab.bound_wave_sq;
        bounds_all = bounds_all && ok;
        max_mass_drift = std::max(max_mass_drift, std::abs(m - mass0));
        max_energy_drift = std::max(max_energy_drift, std::abs(e.total - e0.total));
        csv.add_row({traj.times[k], m, e.kinetic, e.wave, e.coupling, e.total,
                     std::abs(m - mass0), std::abs(e.total - e0.total), gn.lhs, gn.rhs,
                     ok ? 1.0 : 0.0});
    }
    em.add("conservation.csv", csv.to_string());
    const FirstOrderState& fin = traj.back();
    em.add_state("final_state.zk1", g, fin.t, {&fin.u, &fin.n_plus, &fin.n_minus});

    std::string s;
    s += line("mass_initial", mass0);
    s += line("energy_initial", e0.total);
    s += line("max_mass_drift", max_mass_drift);
    s += line("max_energy_drift", max_energy_drift);
    s += line("bound_ux_sq", ab.bound_ux_sq);
    s += line("bound_wave_sq", ab.bound_wave_sq);
    s += line("bounds_respected", bounds_all ? "yes" : "no");
    return {{}, s};
}

ExperimentResult run_reduction_roundtrip(const ExperimentSpec& spec, Emitter& em) {
    const Config& c = spec.config;
    validate_keys(c, spec.kind, {}, {"grid.L", "grid.M", "count", "T", "dt", "s", "amplitude"});
    Grid g = grid_from(c, 64.0 * std::numbers::pi, 512);
    long count = c.get_int("count", 100);
    double T = c.get_double("T", 1.0);
    double dt = c.get_double("dt", 1.0 / 256.0);
    if (count < 1) throw ConfigError("count must be positive");

    RoughDataConfig rc;
    rc.s = c.get_double("s", 0.95);
    rc.amplitude = c.get_double("amplitude", 0.5);

    CsvWriter csv({"sample", "defect_n", "defect_nt", "conjugacy_initial", "conjugacy_final"});
    double worst_rt = 0.0;
    double worst_conj = 0.0;
    for (long i = 0; i < count; ++i) {
        SecondOrderData data = rough_data(g, rc, spec.seed, static_cast<int>(i));
        FirstOrderState fs = to_first_order(data);
        SecondOrderView back = from_first_order(fs);
        double ref = std::max({max_coeff_abs(data.n0), max_coeff_abs(data.n1), 1e-300});
        double dn = l2_norm(back.n - data.n0) / ref;
        double dnt = l2_norm(back.n_t - data.n1) / ref;
        double conj0 = conjugacy_defect(fs);
        TrajectorySlice traj = evolve_strang(fs, T, dt, 1 << 20);
        double conj1 = conjugacy_defect(traj.back());
        worst_rt = std::max({worst_rt, dn, dnt});
        worst_conj = std::max({worst_conj, conj0, conj1});
        csv.add_row({static_cast<double>(i), dn, dnt, conj0, conj1});
    }
    em.add("roundtrip.csv", csv.to_string());

    std::string s;
    s += line("samples", static_cast<double>(count));
    s += line("max_roundtrip_defect", worst_rt);
    s += line("max_conjugacy_defect", worst_conj);
    return {{}, s};
}

ExperimentResult run_split_scaling(const ExperimentSpec& spec, Emitter& em) {
    const Config& c = spec.config;
    validate_keys(c, spec.kind, {},
                  {"grid.L", "grid.M", "s", "delta", "cutoffs", "amplitude", "extra_decay"});
    Grid g = grid_from(c, two_pi, 1024);
    double sv = c.get_double("s", 0.95);
    double delta = c.get_double("delta", 0.05);
    std::vector<double> cutoffs =
        parse_list(c.get_string("cutoffs", "2,4,8,16,32,64,128,256"), "cutoffs");

    RoughDataConfig rc;
    rc.s = sv;
    rc.amplitude = c.get_double("amplitude", 1.0);
    rc.extra_decay = c.get_double("extra_decay", 0.05);
    SecondOrderData data = rough_data(g, rc, spec.seed);

    CsvWriter csv({"N", "low_h1_ratio", "low_l2_ratio", "high_hs_ratio", "high_l2_ratio",
                   "interval_length"});
    double lo[4] = {1e300, 1e300, 1e300, 1e300};
    double hi[4] = {0, 0, 0, 0};
    for (double N : cutoffs) {
        SplitData sd = split(data.u0, N, sv);
        double len = interval_length(N, sv, delta, true);
        double r[4] = {sd.low_h1_ratio, sd.low_l2_ratio, sd.high_hs_ratio, sd.high_l2_ratio};
        for (int i = 0; i < 4; ++i) {
            lo[i] = std::min(lo[i], r[i]);
            hi[i] = std::max(hi[i], r[i]);
        }
        csv.add_row({N, r[0], r[1], r[2], r[3], len});
    }
    em.add("split_scaling.csv", csv.to_string());

    std::string s;
    const char* names[4] = {"low_h1", "low_l2", "high_hs", "high_l2"};
    for (int i = 0; i < 4; ++i) {
        s += line(std::string(names[i]) + "_min", lo[i]);
        s += line(std::string(names[i]) + "_max", hi[i]);
        s += line(std::string(names[i]) + "_variation",
                  lo[i] > 0.0 ? hi[i] / lo[i] : std::numeric_limits<double>::infinity());
    }
    return {{}, s};
}

ExperimentResult run_bilinear_probe(const ExperimentSpec& spec, Emitter& em) {
    const Config& c = spec.config;
    validate_keys(c, spec.kind, {},
                  {"mode", "grid.M", "t_samples", "members", "eps", "s", "k", "l", "a", "a1",
                   "a2"});
    std::string mode = c.get_string("mode", "ensemble");
    Grid g(two_pi, static_cast<int>(c.get_int("grid.M", 64)));
    int T = static_cast<int>(c.get_int("t_samples", 64));
    Grid g2(two_pi, 2 * g.M);

    std::string s;
    if (mode == "ensemble") {
        EstimateParams p =
            params_from(c, admissible_point_p11(c.get_double("eps", 0.01)));
        ConditionReport cond = check_conditions_p11(p);
        long members = c.get_int("members", 100);
        CsvWriter csv({"member", "ratio_base", "ratio_fine", "growth"});
        double worst = 0.0;
        for (long i = 0; i < members; ++i) {
            BilinearSample base = ensemble_member(g, two_pi, T, p, spec.seed, static_cast<int>(i));
            BilinearSample fine =
                ensemble_member(g2, two_pi, 2 * T, p, spec.seed, static_cast<int>(i));
            double r0 = bilinear_ratio(base.n, base.u, p);
            double r1 = bilinear_ratio(fine.n, fine.u, p);
            double growth = r1 / r0;
            worst = std::max(worst, growth);
            csv.add_row({static_cast<double>(i), r0, r1, growth});
        }
        em.add("bilinear.csv", csv.to_string());
        s += line("mode", mode);
        s += line("conditions_ok", cond.ok ? "yes" : "no");
        s += line("members", static_cast<double>(members));
        s += line("max_growth", worst);
    } else if (mode == "adversarial") {
        EstimateParams p = params_from(c, adversarial_params());
        ConditionReport cond = check_conditions_p11(p);
        int k0 = 0, k1 = 0;
        BilinearSample base = adversarial_pair(g, two_pi, T, &k0);
        BilinearSample fine = adversarial_pair(g2, two_pi, 2 * T, &k1);
        double r0 = bilinear_ratio(base.n, base.u, p);
        double r1 = bilinear_ratio(fine.n, fine.u, p);
        CsvWriter csv({"level", "M", "t_samples", "spike_k", "ratio"});
        csv.add_row({0, static_cast<double>(g.M), static_cast<double>(T),
                     static_cast<double>(k0), r0});
        csv.add_row({1, static_cast<double>(g2.M), static_cast<double>(2 * T),
                     static_cast<double>(k1), r1});
        em.add("bilinear.csv", csv.to_string());
        s += line("mode", mode);
        s += line("conditions_ok", cond.ok ? "yes" : "no");
        for (const auto& v : cond.violated) s += line("violated", v);
        s += line("ratio_base", r0);
        s += line("ratio_fine", r1);
        s += line("growth", r1 / r0);
    } else {
        throw ConfigError("bilinear_probe: mode must be ensemble or adversarial");
    }
    return {{}, s};
}

ExperimentResult run_kernel_sweep(const ExperimentSpec& spec, Emitter& em) {
    const Config& c = spec.config;
    validate_keys(c, spec.kind, {"regime"},
                  {"resolution", "radius0", "levels", "eps", "s", "k", "l", "a", "a1", "a2"});
    std::string regime_name = c.require_string("regime");
    KernelRegime regime;
    if (regime_name == "case_aa") regime = KernelRegime::case_aa;
    else if (regime_name == "case_ab") regime = KernelRegime::case_ab;
    else if (regime_name == "case_ac") regime = KernelRegime::case_ac;
    else if (regime_name == "region_b") regime = KernelRegime::region_b;
    else throw ConfigError("unknown kernel regime: " + regime_name);

    EstimateParams p = params_from(c, admissible_point_p11(c.get_double("eps", 0.01)));
    KernelScan scan =
        kernel_supremum(p, regime, static_cast<int>(c.get_int("resolution", 20)),
                        c.get_double("radius0", 8.0), static_cast<int>(c.get_int("levels", 4)));

    CsvWriter csv({"radius", "value", "rel_change"});
    for (size_t i = 0; i < scan.radii.size(); ++i) {
        double rel = 0.0;
        if (i > 0 && scan.level_values[i - 1] > 0.0)
            rel = std::abs(scan.level_values[i] - scan.level_values[i - 1]) /
                  scan.level_values[i - 1];
        csv.add_row({scan.radii[i], scan.level_values[i], rel});
    }
    em.add("kernel.csv", csv.to_string());

    std::string s;
    s += line("regime", regime_name);
    s += line("value", scan.value);
    s += line("converged", scan.converged ? "yes" : "no");
    s += line("diverged", scan.diverged ? "yes" : "no");
    return {{}, s};
}

ExperimentResult run_duhamel_vs_splitting(const ExperimentSpec& spec, Emitter& em) {
    const Config& c = spec.config;
    validate_keys(c, spec.kind,
                  {},
                  {"grid.L", "grid.M", "s", "delta", "cutoff", "amplitude", "refinements",
                   "tol", "profile", "width"});
    Grid g = grid_from(c, 16.0 * std::numbers::pi, 256);
    double sv = c.get_double("s", 0.95);
    double delta = c.get_double("delta", 0.05);
    double N = c.get_double("cutoff", 8.0);
    long refinements = c.get_int("refinements", 3);

    SecondOrderData data = data_from_profile(c, g, spec.seed, 4.0);
    SplitData sd = split(data.u0, N, sv);
    SecondOrderData low{sd.u_low, data.n0, data.n1};
    FirstOrderState start = to_first_order(low);
    double interval = std::min(1.0, interval_length(N, sv, delta));

    FixedPointOptions opts;
    opts.tol = c.get_double("tol", 1e-10);
    TrajectorySlice picard = duhamel_fixed_point(start, interval, opts);
    const FirstOrderState& ref = picard.back();

    CsvWriter csv({"dt", "diff_u", "diff_n_plus", "diff_n_minus"});
    double best = 1e300;
    for (long r = 0; r < refinements; ++r) {
        double dt = interval / (256.0 * std::pow(2.0, static_cast<double>(r)));
        TrajectorySlice march = evolve_strang(start, interval, dt, 1 << 20);
        const FirstOrderState& fin = march.back();
        double du = l2_norm(fin.u - ref.u);
        double dp = l2_norm(fin.n_plus - ref.n_plus);
        double dm = l2_norm(fin.n_minus - ref.n_minus);
        best = std::min(best, std::max({du, dp, dm}));
        csv.add_row({dt, du, dp, dm});
    }
    em.add("comparison.csv", csv.to_string());

    std::string s;
    s += line("interval", interval);
    s += line("picard_iterations", static_cast<double>(picard.iterations));
    s += line("final_contraction", picard.final_contraction());
    s += line("best_agreement", best);
    return {{}, s};
}

void add_report_row(CsvWriter& csv, const ContinuationReport& r) {
    csv.add_row({static_cast<double>(r.index), r.t_start, r.t_end, r.interval, r.mass_start,
                 r.mass_end, r.mass_increment, r.energy_start, r.energy_end, r.energy_increment,
                 r.w_l2, r.w_h1, r.m_l2, r.energy_carrier, r.bound_mass_incr, r.bound_energy_incr,
                 r.energy_bound_violated ? 1.0 : 0.0, r.u02_hs, r.remainder_h1, r.n_l2, r.nt_hm1,
                 r.contraction, static_cast<double>(r.iterations)});
}

const std::vector<std::string> report_columns = {
    "index",  "t_start", "t_end", "interval", "mass_start",   "mass_end", "mass_increment",
    "energy_start", "energy_end", "energy_increment", "w_l2", "w_h1",     "m_l2",
    "energy_carrier", "bound_mass_incr", "bound_energy_incr", "energy_bound_violated",
    "u02_hs", "remainder_h1", "n_l2", "nt_hm1", "contraction", "iterations"};

PipelineConfig pipeline_from(const Config& c, const Grid& g) {
    PipelineConfig pc;
    pc.grid = g;
    pc.s = c.get_double("s", 0.95);
    pc.delta = c.get_double("delta", 0.05);
    pc.cutoff = c.get_double("cutoff", 8.0);
    pc.horizon = c.get_double("T", 1.0);
    pc.margin = c.get_double("margin", 2.0);
    pc.fp.tol = c.get_double("tol", 1e-10);
    std::string method = c.get_string("method", "duhamel");
    if (method == "duhamel") pc.method = EvolveMethod::duhamel;
    else if (method == "strang") pc.method = EvolveMethod::strang;
    else throw ConfigError("method must be duhamel or strang");
    return pc;
}

ExperimentResult run_interval_pipeline(const ExperimentSpec& spec, Emitter& em) {
    const Config& c = spec.config;
    validate_keys(c, spec.kind, {},
                  {"grid.L", "grid.M", "s", "delta", "cutoff", "T", "margin", "amplitude",
                   "method", "tol"});
    Grid g = grid_from(c, 16.0 * std::numbers::pi, 256);
    PipelineConfig pc = pipeline_from(c, g);

    RoughDataConfig rc;
    rc.s = pc.s;
    rc.amplitude = c.get_double("amplitude", 0.15);
    SecondOrderData data = rough_data(g, rc, spec.seed);

    PipelineState st = init_pipeline(data, pc);
    em.add_state("state_initial.zk1", g, 0.0,
                 {&st.regular.u, &st.regular.n_plus, &st.regular.n_minus});
    ContinuationReport rep = advance_interval(st, pc);
    em.add_state("state_final.zk1", g, st.elapsed,
                 {&st.regular.u, &st.regular.n_plus, &st.regular.n_minus});

    CsvWriter csv(report_columns);
    add_report_row(csv, rep);
    em.add("interval_report.csv", csv.to_string());

    std::string s;
    s += line("cutoff", st.cutoff);
    s += line("interval", st.interval);
    s += line("mass_increment", rep.mass_increment);
    s += line("energy_increment", rep.energy_increment);
    s += line("w_l2", rep.w_l2);
    s += line("w_h1", rep.w_h1);
    s += line("energy_carrier", rep.energy_carrier);
    s += line("remainder_h1", rep.remainder_h1);
    s += line("contraction", rep.contraction);
    s += line("iterations", static_cast<double>(rep.iterations));
    return {{}, s};
}

ExperimentResult run_global_growth(const ExperimentSpec& spec, Emitter& em) {
    const Config& c = spec.config;
    validate_keys(c, spec.kind, {"s"},
                  {"grid.L", "grid.M", "delta", "cutoff", "T", "margin", "audit_margin",
                   "amplitude", "intervals", "method", "tol"});
    Grid g = grid_from(c, 16.0 * std::numbers::pi, 256);
    PipelineConfig pc = pipeline_from(c, g);
    if (!c.has("cutoff") && c.has("T")) pc.cutoff = 0.0;  // automatic selection
    long intervals = c.get_int("intervals", 4);
    double audit_margin = c.get_double("audit_margin", 4.0);

    RoughDataConfig rc;
    rc.s = pc.s;
    rc.amplitude = c.get_double("amplitude", 0.15);
    SecondOrderData data = rough_data(g, rc, spec.seed);

    GlobalRunResult run = run_global(data, pc, static_cast<int>(intervals));

    CsvWriter csv(report_columns);
    for (const auto& r : run.reports) add_report_row(csv, r);
    em.add("growth.csv", csv.to_string());

    AuditResult audit = increment_audit(run.reports, pc.s, run.cutoff, audit_margin);

    std::string s;
    s += line("cutoff", run.cutoff);
    s += line("interval", run.interval);
    s += line("intervals", static_cast<double>(run.reports.size()));
    s += line("slope", run.slope);
    s += line("slope_defined", run.slope_defined ? "yes" : "no");
    s += line("reference_exponent", run.reference_exponent);
    s += line("note", run.note);
    s += line("mass_exponent", audit.mass_exponent);
    s += line("energy_exponent", audit.energy_exponent);
    s += line("c2", audit.c2);
    s += line("c3", audit.c3);
    s += line("bound_mass_incr", audit.bound_mass_incr);
    s += line("bound_energy_incr", audit.bound_energy_incr);
    s += line("mass_dominated", audit.mass_dominated ? "yes" : "no");
    s += line("energy_dominated", audit.energy_dominated ? "yes" : "no");
    s += line("max_mass_slack", audit.max_mass_slack);
    s += line("max_energy_slack", audit.max_energy_slack);
    s += line("regression_ok", audit.regression_ok ? "yes" : "no");
    long violations = 0;
    for (const auto& r : run.reports)
        if (r.energy_bound_violated) ++violations;
    s += line("energy_bound_violations", static_cast<double>(violations));
    s += line("total_energy_increment", audit.total_energy_increment);
    s += line("energy_allowance", audit.energy_allowance);
    s += line("energy_ok", audit.energy_ok ? "yes" : "no");
    s += line("steps_exponent", audit.steps_exponent);
    s += line("lhs_exponent", audit.lhs_exponent);
    s += line("rhs_exponent", audit.rhs_exponent);
    s += line("exponent_gap", audit.exponent_gap);
    s += line("regime", audit.regime);
    return {{}, s};
}

} // namespace

const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> kinds = {
        "conservation",          "reduction_roundtrip", "split_scaling",
        "bilinear_probe",        "kernel_supremum_sweep", "duhamel_vs_splitting",
        "interval_pipeline",     "global_growth"};
    return kinds;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    Emitter em;
    em.dir = spec.out_dir;
    ExperimentResult res;
    if (spec.kind == "conservation") res = run_conservation(spec, em);
    else if (spec.kind == "reduction_roundtrip") res = run_reduction_roundtrip(spec, em);
    else if (spec.kind == "split_scaling") res = run_split_scaling(spec, em);
    else if (spec.kind == "bilinear_probe") res = run_bilinear_probe(spec, em);
    else if (spec.kind == "kernel_supremum_sweep") res = run_kernel_sweep(spec, em);
    else if (spec.kind == "duhamel_vs_splitting") res = run_duhamel_vs_splitting(spec, em);
    else if (spec.kind == "interval_pipeline") res = run_interval_pipeline(spec, em);
    else if (spec.kind == "global_growth") res = run_global_growth(spec, em);
    else throw ConfigError("unknown experiment kind: " + spec.kind);

    em.add("summary.txt", res.summary);
    res.artifacts = em.flush(spec);
    return res;
}

void emit_plotdata(const std::string& csv_path, const std::string& out_path,
                   const std::vector<std::string>& columns, bool log10) {
    CsvTable table = read_csv(csv_path);
    std::vector<int> idx;
    std::vector<std::string> names;
    if (columns.empty()) {
        for (size_t i = 0; i < table.columns.size(); ++i) {
            idx.push_back(static_cast<int>(i));
            names.push_back(table.columns[i]);
        }
    } else {
        for (const auto& name : columns) {
            int i = table.column_index(name);
            if (i < 0) throw ConfigError("no such column in " + csv_path + ": " + name);
            idx.push_back(i);
            names.push_back(name);
        }
    }
    std::string out = "#";
    for (const auto& n : names) out += " " + n;
    out += "\n";
    for (const auto& row : table.rows) {
        bool first = true;
        for (int i : idx) {
            double v = 0.0;
            try {
                v = std::stod(row.at(static_cast<size_t>(i)));
            } catch (const std::exception&) {
                throw ConfigError("non-numeric cell in " + csv_path);
            }
            if (log10) v = v > 0.0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN();
            out += (first ? "" : " ") + format_double(v);
            first = false;
        }
        out += "\n";
    }
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open for writing: " + out_path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("short write: " + out_path);
}

} // namespace zk
