// weylpath: batch front-end for the path-integral library.
//
//   weylpath weyl-check --M 16 [--L 4]
//   weylpath scatter  [--config run.cfg] [--out dir]
//   weylpath fields   [--config run.cfg] [--out dir]
//   weylpath wavelet  [--config run.cfg] [--out dir]
//   weylpath bruteforce [--config run.cfg] [--out dir] [--seed n]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "weylpath/config.hpp"
#include "weylpath/csv.hpp"
#include "weylpath/error.hpp"
#include "weylpath/field_theory.hpp"
#include "weylpath/kernels.hpp"
#include "weylpath/propagator.hpp"
#include "weylpath/scattering.hpp"
#include "weylpath/wavelet.hpp"
#include "weylpath/weyl.hpp"

namespace fs = std::filesystem;
using namespace weylpath;

namespace {

struct Common {
    std::string config;
    std::string out = ".";
    int threads = 0;
    std::uint64_t seed = 12345;
};

RunConfig load(const Common& c) { return c.config.empty() ? RunConfig::parse("", "<defaults>") : RunConfig::from_file(c.config); }

std::string out_path(const Common& c, const std::string& name) {
    std::error_code ec;
    fs::create_directories(c.out, ec);
    if (ec) {
        throw ConfigError("cannot create output directory '" + c.out + "': " + ec.message());
    }
    return (fs::path(c.out) / name).string();
}

void provenance(CsvWriter& w, const std::string& command, const RunConfig& cfg,
                const std::vector<std::pair<std::string, double>>& extra) {
    w.comment("weylpath " + command);
    w.comment("config " + cfg.origin());
    for (const auto& [k, v] : cfg.entries()) {
        w.comment("  " + k + " = " + v);
    }
    for (const auto& [k, v] : extra) {
        w.comment(k + " = " + format_number(v));
    }
}

// --------------------------------------------------------------------- weyl

int run_weyl_check(int M, int L) {
    if (M < 2) {
        throw ConfigError("weyl-check: M must be >= 2");
    }
    const bool power_of_two = (M & (M - 1)) == 0;
    if (L > 0 && (L > 20 || (1 << L) != M)) {
        throw ConfigError("weyl-check: --L requires M = 2^L");
    }
    if (L == 0 && power_of_two) {
        L = static_cast<int>(std::lround(std::log2(M)));
    }

    const WeylBasis basis = WeylBasis::zero_based(M);
    const WeylResiduals res = weyl_residuals(basis);
    std::vector<std::pair<std::string, double>> gating{{"U^M - I", res.shiftPower},
                                                       {"V^M - I", res.clockPower},
                                                       {"UV - VU e^{-2 pi i/M}", res.commutation},
                                                       {"sum |u_n><u_n| - I", res.completeness}};

    std::printf("weyl-check M=%d\n", M);
    double cyclic = -1.0;
    if (L > 0) {
        const QbitFactorization q = qbit_factorize(L);
        gating.emplace_back("qbit tensor monomials vs bit actions", qbit_structure_residual(q));
        cyclic = qbit_cyclic_mismatch(q, L <= 6 ? M : 4);
        if (L == 1) {
            std::printf("  M=2: U = sigma_1 (residual %.3e), V = sigma_3 (residual %.3e)\n",
                        max_abs(build_shift_U(basis).matrix - q.gates[0].first),
                        max_abs(build_clock_V(basis).matrix - q.gates[0].second));
        }
    }

    bool ok = true;
    for (const auto& [name, r] : gating) {
        const bool pass = r < 1e-11;
        ok = ok && pass;
        std::printf("  %-40s %.3e  %s\n", name.c_str(), r, pass ? "ok" : "FAIL");
    }
    if (cyclic >= 0.0) {
        std::printf("  %-40s %.3e  (informational: prod U_m^{n_m} vs U^n)\n", "qbit monomials vs cyclic powers",
                    cyclic);
    }
    return ok ? 0 : static_cast<int>(ExitCode::InvariantFailure);
}

// ------------------------------------------------------------------ scatter

ScatterConfig scatter_config(const RunConfig& cfg) {
    cfg.require_known({"K", "N", "lambda", "alpha", "mass", "mean_p", "delta_p", "tau", "ls_points"});
    ScatterConfig c;
    c.K = cfg.get_int("K", c.K);
    c.trotterN = cfg.get_int("N", c.trotterN);
    c.lambda = cfg.get_double("lambda", c.lambda);
    c.alpha = cfg.get_double("alpha", c.alpha);
    c.packet.mass = cfg.get_double("mass", c.packet.mass);
    c.packet.meanP = cfg.get_double("mean_p", c.packet.meanP);
    c.packet.deltaP = cfg.get_double("delta_p", c.packet.deltaP);
    c.packet.tau = cfg.get_double("tau", c.packet.tau);
    try {
        validate(c);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return c;
}

int run_scatter(const Common& common) {
    const RunConfig cfg = load(common);
    const ScatterConfig c = scatter_config(cfg);
    const int ls_points = cfg.get_int("ls_points", 128);

    const HalfShellResult r = half_shell_T(c);
    if (r.normDrift > 1e-9) {
        throw NumericalError("scatter: norm drift " + format_number(r.normDrift) + " exceeds 1e-9");
    }
    if (r.leakWarning) {
        std::fprintf(stderr, "warning: packet probability near the grid edge exceeds 1e-6\n");
    }
    cplx ls_on{0.0, 0.0};
    cplx ls_back{0.0, 0.0};
    double ls_delta = 0.0;
    if (c.lambda != 0.0 && c.packet.meanP > 0.0) {
        const LsResult ls = ls_oracle(c.lambda, c.alpha, c.packet.mass, c.packet.meanP, ls_points);
        ls_on = ls.onShell;
        ls_back = ls.backward;
        ls_delta = ls.convergenceDelta;
    }
    const PhaseGrid grid(c.K);
    const std::vector<std::pair<std::string, double>> extra{
        {"M", grid.dim()}, {"eps", grid.spacing()}, {"K eps", grid.extent()}, {"dt", c.packet.tau / c.trotterN},
        {"norm drift", r.normDrift}, {"ls convergence delta", ls_delta}};

    {
        CsvWriter w(out_path(common, "scatter_stats.csv"));
        provenance(w, "scatter", cfg, extra);
        w.header({"meanX", "meanP", "deltaX", "deltaP", "deltaX_deltaP", "norm_drift", "edge_warning"});
        const PacketStats& s = r.initialStats;
        w.row({s.meanX, s.meanP, s.deltaX, s.deltaP, s.deltaX * s.deltaP, r.normDrift, r.leakWarning ? 1.0 : 0.0});
    }
    {
        CsvWriter w(out_path(common, "half_shell.csv"));
        provenance(w, "scatter", cfg, extra);
        w.header({"p", "t_re", "t_im", "born_re", "born_im"});
        for (std::size_t i = 0; i < r.pGrid.size(); ++i) {
            w.row({r.pGrid[i], r.tReal[i], r.tImag[i], r.bornReal[i], r.bornImag[i]});
        }
    }
    {
        CsvWriter w(out_path(common, "on_shell.csv"));
        provenance(w, "scatter", cfg, extra);
        w.header({"quantity", "p", "re", "im"});
        const double p0 = r.onShellMomentum;
        w.row("path_integral_T", {p0, r.onShellT.real(), r.onShellT.imag()});
        w.row("born", {p0, r.onShellBorn.real(), r.onShellBorn.imag()});
        w.row("lippmann_schwinger", {p0, ls_on.real(), ls_on.imag()});
        w.row("path_integral_T", {-p0, r.backwardT.real(), r.backwardT.imag()});
        w.row("born", {-p0, r.backwardBorn.real(), r.backwardBorn.imag()});
        w.row("lippmann_schwinger", {-p0, ls_back.real(), ls_back.imag()});
    }
    std::printf("on-shell T(%.4g) = %.9g %+.9gi   Born = %.9g %+.9gi   LS = %.9g %+.9gi\n", r.onShellMomentum,
                r.onShellT.real(), r.onShellT.imag(), r.onShellBorn.real(), r.onShellBorn.imag(), ls_on.real(),
                ls_on.imag());
    std::printf("norm drift %.3e\n", r.normDrift);
    return 0;
}

// ------------------------------------------------------------------ wavelet

int run_wavelet(const Common& common) {
    const RunConfig cfg = load(common);
    cfg.require_known({"modes", "quadrature"});
    const int F = cfg.get_int("modes", 2);
    const int q = cfg.get_int("quadrature", 256);
    if (F < 1 || F > 16) {
        throw ConfigError("wavelet: modes must be in 1..16");
    }
    std::vector<int> modes(F);
    for (int i = 0; i < F; ++i) modes[i] = i;
    OverlapTables t;
    try {
        t = overlap_tables(modes, q);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    const std::vector<std::pair<std::string, double>> extra{{"points per unit", q},
                                                            {"gamma convergence delta", t.convergenceDelta}};
    {
        CsvWriter w(out_path(common, "wavelet_h.csv"));
        provenance(w, "wavelet", cfg, extra);
        w.header({"l", "h"});
        const auto h = daubechies_h().h;
        for (int l = 0; l < 6; ++l) w.row({static_cast<double>(l), h[l]});
    }
    {
        CsvWriter w(out_path(common, "wavelet_D.csv"));
        provenance(w, "wavelet", cfg, extra);
        w.header({"m", "n", "D", "D_trapezoid"});
        for (int m = 0; m < F; ++m)
            for (int n = 0; n < F; ++n)
                w.row({static_cast<double>(m), static_cast<double>(n), t.D(m, n), t.Dtrapezoid(m, n)});
    }
    {
        // fine-level values for the per-entry delta column
        const OverlapTables fine = overlap_tables(modes, 2 * q);
        CsvWriter w(out_path(common, "wavelet_gamma.csv"));
        provenance(w, "wavelet", cfg, extra);
        w.header({"k", "l", "m", "n", "gamma", "delta"});
        for (int k = 0; k < F; ++k)
            for (int l = k; l < F; ++l)
                for (int m = l; m < F; ++m)
                    for (int n = m; n < F; ++n)
                        w.row({double(k), double(l), double(m), double(n), t.gamma(k, l, m, n),
                               std::abs(fine.gamma(k, l, m, n) - t.gamma(k, l, m, n))});
    }
    std::printf("Gamma_0000 = %.9g  D_00 = %.9g  convergence delta %.3e\n", t.gamma(0, 0, 0, 0), t.D(0, 0),
                t.convergenceDelta);
    return 0;
}

// ------------------------------------------------------------------- fields

FieldConfig field_config(const RunConfig& cfg) {
    cfg.require_known({"F", "K", "N", "t", "mass_sq", "lambda", "mean", "delta", "quadrature"});
    FieldConfig c;
    c.F = cfg.get_int("F", 2);
    c.K = cfg.get_int("K", 20);
    c.trotterN = cfg.get_int("N", 20);
    c.totalTime = cfg.get_double("t", 0.5);
    c.massSq = cfg.get_double("mass_sq", 1.0);
    c.lambda = cfg.get_double("lambda", 1.0);
    const double mean = cfg.get_double("mean", 0.5);
    const double delta = cfg.get_double("delta", 0.5);
    if (c.F < 1 || c.F > 8) {
        throw ConfigError("fields: F must be in 1..8");
    }
    std::vector<int> modes(c.F);
    for (int i = 0; i < c.F; ++i) modes[i] = i;
    try {
        const OverlapTables t = overlap_tables(modes, cfg.get_int("quadrature", 256));
        c.D = t.D;
        c.Gamma = t.Gamma;
        c.initial.assign(c.F, ModePacket{mean, delta});
        validate(c);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return c;
}

void write_grid(const Common& common, const std::string& name, const RunConfig& cfg, const FieldState& s,
                const std::vector<std::pair<std::string, double>>& extra) {
    CsvWriter w(out_path(common, name));
    provenance(w, "fields", cfg, extra);
    std::vector<std::string> cols;
    for (int f = 0; f < s.modes; ++f) cols.push_back("phi" + std::to_string(f));
    cols.push_back("re");
    cols.push_back("im");
    w.header(cols);
    const int M = s.grid.dim();
    const std::vector<double> pts = s.grid.points();
    std::vector<double> row(s.modes + 2);
    for (long long idx = 0; idx < s.amplitudes.size(); ++idx) {
        long long rest = idx;
        for (int f = s.modes - 1; f >= 0; --f) {
            row[f] = pts[rest % M];
            rest /= M;
        }
        row[s.modes] = s.amplitudes(idx).real();
        row[s.modes + 1] = s.amplitudes(idx).imag();
        w.row(row);
    }
}

int run_fields(const Common& common) {
    const RunConfig cfg = load(common);
    const FieldConfig c = field_config(cfg);
    const FieldState initial = initial_field_packet(c);
    const FieldState evolved = evolve_fields(c, initial);
    const double drift = std::abs(evolved.norm() / initial.norm() - 1.0);
    if (drift > 1e-9) {
        throw NumericalError("fields: norm drift " + format_number(drift) + " exceeds 1e-9");
    }
    const double max_im = evolved.amplitudes.imag().cwiseAbs().maxCoeff();
    const PhaseGrid& grid = initial.grid;
    const std::vector<std::pair<std::string, double>> extra{
        {"M", grid.dim()}, {"eps", grid.spacing()}, {"dt", c.trotterN > 0 ? c.dt() : 0.0},
        {"norm drift", drift}, {"max |Im|", max_im}};

    write_grid(common, "fields_initial.csv", cfg, initial, extra);
    write_grid(common, "fields_evolved.csv", cfg, evolved, extra);
    {
        CsvWriter w(out_path(common, "fields_slice.csv"));
        provenance(w, "fields", cfg, extra);
        w.header({"phi0", "initial_re", "initial_im", "evolved_re", "evolved_im"});
        const CVector a = slice_at_origin(initial);
        const CVector b = slice_at_origin(evolved);
        const std::vector<double> pts = grid.points();
        for (int i = 0; i < grid.dim(); ++i) w.row({pts[i], a(i).real(), a(i).imag(), b(i).real(), b(i).imag()});
    }
    {
        CsvWriter w(out_path(common, "fields_marginals.csv"));
        provenance(w, "fields", cfg, extra);
        std::vector<std::string> cols{"phi"};
        for (int f = 0; f < c.F; ++f) {
            cols.push_back("initial_mode" + std::to_string(f));
            cols.push_back("evolved_mode" + std::to_string(f));
        }
        w.header(cols);
        std::vector<std::vector<double>> m;
        for (int f = 0; f < c.F; ++f) {
            m.push_back(mode_marginal(initial, f));
            m.push_back(mode_marginal(evolved, f));
        }
        const std::vector<double> pts = grid.points();
        for (int i = 0; i < grid.dim(); ++i) {
            std::vector<double> row{pts[i]};
            for (const auto& col : m) row.push_back(col[i]);
            w.row(row);
        }
    }
    std::printf("fields: M=%d F=%d N=%d t=%g  norm drift %.3e  max|Im| %.6g\n", grid.dim(), c.F, c.trotterN,
                c.totalTime, drift, max_im);
    return 0;
}

// --------------------------------------------------------------- bruteforce

int run_bruteforce(const Common& common) {
    const RunConfig cfg = load(common);
    cfg.require_known({"M", "N", "dt", "k_initial", "k_final", "functional", "samples"});
    const int M = cfg.get_int("M", 3);
    const int N = cfg.get_int("N", 2);
    const double dt = cfg.get_double("dt", 0.3);
    const int ki = cfg.get_int("k_initial", 0);
    const int kf = cfg.get_int("k_final", 0);
    const bool functional = cfg.get_int("functional", 1) != 0;
    const int samples = cfg.get_int("samples", 20);
    if (M < 2 || N < 1 || samples < 1) {
        throw ConfigError("bruteforce: need M >= 2, N >= 1, samples >= 1");
    }
    const WeylBasis basis = WeylBasis::zero_based(M);
    if (!basis.contains(ki) || !basis.contains(kf)) {
        throw ConfigError("bruteforce: k_initial/k_final outside 0..M-1");
    }

    CsvWriter w(out_path(common, "bruteforce.csv"));
    provenance(w, "bruteforce", cfg, {{"seed", static_cast<double>(common.seed)}});
    w.header({"sample", "norm_re", "norm_im", "path_re", "path_im", "kernel_re", "kernel_im", "abs_diff"});
    double worst_norm = 0.0;
    double worst_diff = 0.0;
    for (int s = 0; s < samples; ++s) {
        const CMatrix h = random_hermitian(M, common.seed + static_cast<std::uint64_t>(s));
        const MixedHamiltonian mixed = mixed_symbol(basis, h);
        const PathEnsembleResult r = brute_force_amplitude(basis, mixed, dt, N, ki, kf, functional);
        CMatrix t = functional ? mixed_step_kernel(basis, mixed, dt).matrix : CMatrix::Identity(M, M);
        const CMatrix tn = operator_power({basis, t}, N).matrix;
        const cplx k = tn(basis.position(kf), basis.position(ki));
        const double diff = std::abs(r.amplitude - k);
        worst_norm = std::max(worst_norm, std::abs(r.normalizationSum - 1.0));
        worst_diff = std::max(worst_diff, diff);
        w.row({double(s), r.normalizationSum.real(), r.normalizationSum.imag(), r.amplitude.real(), r.amplitude.imag(),
               k.real(), k.imag(), diff});
    }
    std::printf("bruteforce M=%d N=%d paths=%lld  max|sum P - 1| %.3e  max|path - kernel| %.3e\n", M, N,
                static_cast<long long>(std::llround(std::pow(M, 2 * N))), worst_norm, worst_diff);
    return (worst_norm < 1e-10 && worst_diff < 1e-10) ? 0 : static_cast<int>(ExitCode::InvariantFailure);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Real-time path integrals on finite Weyl phase space"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--threads", common.threads, "OpenMP threads (0 = auto)")->check(CLI::NonNegativeNumber);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config, "key=value configuration file");
        sub->add_option("--out", common.out, "output directory");
        sub->add_option("--threads", common.threads, "OpenMP threads (0 = auto)")->check(CLI::NonNegativeNumber);
        sub->add_option("--seed", common.seed, "seed for randomized checks");
    };

    int weyl_m = 0;
    int weyl_l = 0;
    CLI::App* weyl = app.add_subcommand("weyl-check", "Weyl-pair residuals and qbit structure");
    weyl->add_option("--M", weyl_m, "dimension")->required();
    weyl->add_option("--L", weyl_l, "qbit count (M = 2^L)");
    add_common(weyl);
    CLI::App* scatter = app.add_subcommand("scatter", "wave-packet scattering and half-shell T");
    add_common(scatter);
    CLI::App* fields = app.add_subcommand("fields", "two-mode phi^4 evolution");
    add_common(fields);
    CLI::App* wavelet = app.add_subcommand("wavelet", "Daubechies overlap tables");
    add_common(wavelet);
    CLI::App* brute = app.add_subcommand("bruteforce", "enumerate all phase-space paths");
    add_common(brute);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::ConfigError);
    }

    try {
        kernels::set_thread_count(common.threads);
        if (*weyl) return run_weyl_check(weyl_m, weyl_l);
        if (*scatter) return run_scatter(common);
        if (*fields) return run_fields(common);
        if (*wavelet) return run_wavelet(common);
        if (*brute) return run_bruteforce(common);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::ConfigError);
    } catch (const DomainError& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return static_cast<int>(ExitCode::ConfigError);
    } catch (const GuardViolation& e) {
        std::cerr << "guard violation: " << e.what() << '\n';
        return static_cast<int>(ExitCode::GuardViolation);
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return static_cast<int>(ExitCode::InvariantFailure);
    }
    return static_cast<int>(ExitCode::ConfigError);
}
