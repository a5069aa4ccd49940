#include "lllab/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "lll/errors.hpp"
#include "lll/gp_lll.hpp"
#include "lll/meanfield.hpp"
#include "lll/plasma_mc.hpp"
#include "lll/spectra.hpp"
#include "lll/trial_states.hpp"
#include "output.hpp"

namespace lllab {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Common {
    unsigned workers = 1;
    std::string out = ".";
};

struct YrastArgs {
    int n = 4;
    int lmax = 16;
    std::string cache_dir;
};

struct GapsArgs {
    int n = 4;
    int lmax = -1;
};

struct GroundArgs {
    int n = 4;
    double omega = 0.1;
    double g = 1.0;
    double k = 0.0;
    int lmax = -1;
};

struct PhasesArgs {
    int n = 5;
    std::vector<double> omega_grid{0.5, -0.2, -2.0, -10.0};
    std::vector<double> k_grid{0.01, 0.1};
    double g = 1.0;
    int lmax = -1;
    std::size_t ed_max_dim = 3000;
};

struct TrialArgs {
    int n = 4;
    int m_max = 4;
    double omega = 0.0;
    double g = 1.0;
    double k = 0.0;
    bool write_fock = false;
};

struct PlasmaArgs {
    int n = 64;
    int m = 0;
    std::size_t sweeps = 20000;
    std::size_t burn_in = 2000;
    std::size_t stride = 1;
    double step = 0.0;
    std::uint64_t seed = 1;
    std::size_t chains = 1;
    std::size_t bins = 100;
    double rmax = 0.0;
};

struct MeanFieldArgs {
    int n = 64;
    int m = 0;
    double tol = 1e-9;
    std::size_t points = 0;
    double rmax = 0.0;
};

struct GPArgs {
    double omega = 0.1;
    double ng = 10.0;
    int lmax = 32;
    int restarts = 16;
    double tol = 1e-8;
    std::uint64_t seed = 7;
    std::size_t grid_points = 200;
};

struct CompareArgs {
    int n = 4;
    std::vector<double> omega_grid{0.01, 0.03, 0.1, 0.3, 1.0};
    double g = 1.0;
    int lmax = 32;
    int restarts = 16;
    std::uint64_t seed = 7;
};

// Output directory plus the metadata document written at the end of a run.
struct Run {
    fs::path dir;
    json results = json::object();
    std::optional<std::uint64_t> seed;

    fs::path file(const std::string& name) const { return dir / name; }
};

lll::SpectraOptions spectra_options(const Common& common) {
    lll::SpectraOptions o;
    o.workers = common.workers;
    return o;
}

void run_yrast(const YrastArgs& a, const Common& c, Run& run) {
    auto opts = spectra_options(c);
    if (!a.cache_dir.empty()) opts.cache_dir = a.cache_dir;
    const auto curve = lll::yrast_curve(a.n, a.lmax, opts);
    CsvWriter csv(run.file("yrast.csv"), {"L", "dim", "I_L", "gap", "kernel_dim"});
    for (const auto& p : curve) {
        csv << p.L << p.dim << p.I_of_L << p.gap << p.kernel_dim;
        csv.end_row();
    }
    run.results["rows"] = curve.size();
}

void run_gaps(const GapsArgs& a, const Common& c, Run& run) {
    const int lmax = a.lmax >= 0 ? a.lmax : a.n * (a.n - 1);
    const auto scan = lll::spectral_gap_scan(a.n, lmax, spectra_options(c));
    CsvWriter csv(run.file("gaps.csv"), {"L", "dim", "gap", "kernel_dim"});
    for (const auto& p : scan.points) {
        csv << p.L << p.dim << p.gap << p.kernel_dim;
        csv.end_row();
    }
    run.results["reference_L"] = a.n * (a.n - 1) - a.n;
    run.results["reference_gap"] = scan.reference_gap;
    run.results["min_gap"] = scan.min_gap;
    run.results["min_gap_L"] = scan.min_gap_L;
    run.results["conjecture_holds"] = scan.conjecture_holds;
}

int default_scan_limit(int n, const lll::HamiltonianParams& p) {
    int lmax = n * (n - 1) + 2 * n;
    if (p.k > 0.0) lmax = std::max(lmax, n * (n - 1) + n * (lll::optimal_m(p.omega, p.k, n) + 2) + n);
    return lmax;
}

json record_json(const lll::GroundStateRecord& r) {
    json j;
    j["L_star"] = r.L_star;
    j["energy"] = r.energy;
    j["correlation_defect"] = r.correlation_defect;
    j["filling_factor"] = r.filling_factor;
    j["tied_sectors"] = r.tied_sectors;
    return j;
}

void run_ground(const GroundArgs& a, const Common& c, Run& run) {
    const lll::HamiltonianParams p{a.omega, a.g, a.k};
    p.validate();
    const int lmax = a.lmax >= 0 ? a.lmax : default_scan_limit(a.n, p);
    const auto r = lll::ground_state_scan(a.n, p, lmax, spectra_options(c));
    CsvWriter csv(run.file("sectors.csv"), {"L", "energy", "lower_bound"});
    for (const auto& s : r.sector_energies) {
        csv << s.L << s.energy << lll::sector_energy_lower_bound(p, a.n, s.L);
        csv.end_row();
    }
    json state = record_json(r);
    const auto basis = lll::enumerate_sector(a.n, r.L_star);
    json amps = json::array();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double v = r.vector.coeffs[i];
        if (v == 0.0) continue;
        amps.push_back({{"orbitals", basis.state_at(i).orbitals()}, {"amplitude", v}});
    }
    state["vector"] = amps;
    write_json(run.file("ground_state.json"), state);
    run.results = record_json(r);
}

std::string phase_of(int m_opt, int n) {
    if (m_opt == 0) return "laughlin";
    if (m_opt <= n * n) return "annulus";
    return "thermal";
}

void run_phases(const PhasesArgs& a, const Common& c, Run& run) {
    CsvWriter csv(run.file("phases.csv"),
                  {"omega", "k", "m_opt", "regime", "L_star", "energy", "correlation_defect", "ed_status"});
    auto opts = spectra_options(c);
    opts.assembly.max_dim = a.ed_max_dim;
    std::size_t rows = 0;
    for (double omega : a.omega_grid) {
        for (double k : a.k_grid) {
            const lll::HamiltonianParams p{omega, a.g, k};
            p.validate();
            const int m_opt = lll::optimal_m(omega, k, a.n);
            csv << omega << k << m_opt << phase_of(m_opt, a.n);
            try {
                const int lmax = a.lmax >= 0 ? a.lmax : default_scan_limit(a.n, p);
                const auto r = lll::ground_state_scan(a.n, p, lmax, opts);
                csv << r.L_star << r.energy << r.correlation_defect << "ok";
            } catch (const lll::ResourceError&) {
                csv << "" << "" << "" << "skipped";
            }
            csv.end_row();
            ++rows;
        }
    }
    run.results["rows"] = rows;
}

void write_fock(const fs::path& path, const lll::FockVector& v) {
    const auto basis = lll::enumerate_sector(v.tag.particles, v.tag.angular_momentum);
    json j;
    j["N"] = v.tag.particles;
    j["L"] = v.tag.angular_momentum;
    json amps = json::array();
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (v.coeffs[i] != 0.0) amps.push_back({{"orbitals", basis.state_at(i).orbitals()}, {"amplitude", v.coeffs[i]}});
    j["amplitudes"] = amps;
    write_json(path, j);
}

void run_trial(const TrialArgs& a, const Common&, Run& run) {
    const lll::HamiltonianParams p{a.omega, a.g, a.k};
    p.validate();
    const auto expansion = lll::laughlin_expansion(a.n);
    CsvWriter csv(run.file("trial.csv"), {"m", "L_m", "E", "L2_expect"});
    for (int m = 0; m <= a.m_max; ++m) {
        const auto r = lll::trial_energy(expansion, m, p);
        csv << r.m << r.L_m << r.energy << r.L2_expect;
        csv.end_row();
        if (a.write_fock) write_fock(run.file("fock_m" + std::to_string(m) + ".json"), lll::giant_vortex_fock(a.n, m));
    }
    if (a.k > 0.0) {
        run.results["optimal_m"] = lll::optimal_m(a.omega, a.k, a.n);
        run.results["numeric_optimal_m"] = lll::numeric_optimal_m(a.omega, a.k, a.n);
    }
}

void run_plasma(const PlasmaArgs& a, const Common& c, Run& run) {
    lll::MetropolisOptions o;
    o.particles = a.n;
    o.m = a.m;
    o.sweeps = a.sweeps;
    o.burn_in = a.burn_in;
    o.stride = a.stride;
    o.step_scale = a.step;
    o.seed = a.seed;
    run.seed = a.seed;
    const auto chains = lll::run_chains(o, a.chains, c.workers);
    const auto merged = lll::merge_streams(chains);
    const auto d = lll::radial_density(merged, {a.bins, a.rmax});
    CsvWriter csv(run.file("density.csv"), {"r_lo", "r_hi", "r", "rho", "error"});
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        csv << d.edges[i] << d.edges[i + 1] << d.center(i) << d.values[i] << d.errors[i];
        csv.end_row();
    }
    json per_chain = json::array();
    for (const auto& s : chains)
        per_chain.push_back({{"seed", s.seed}, {"acceptance_rate", s.acceptance_rate}, {"step_scale", s.step_scale},
                             {"max_energy_drift", s.max_energy_drift}, {"configurations", s.configurations}});
    run.results["chains"] = per_chain;
    run.results["acceptance_rate"] = merged.acceptance_rate;
    run.results["samples"] = d.samples;
    run.results["overflow_fraction"] = d.overflow_fraction;
}

void run_meanfield(const MeanFieldArgs& a, const Common&, Run& run) {
    auto grid = lll::RadialGrid::for_plasma(a.n, a.m);
    if (a.points > 0 || a.rmax > 0.0)
        grid = lll::RadialGrid(a.rmax > 0.0 ? a.rmax : grid.r_max(), a.points > 0 ? a.points : grid.size());
    lll::MeanFieldOptions o;
    o.tolerance = a.tol;
    const auto r = lll::minimize_mf(a.n, a.m, grid, o);
    const auto annulus = lll::annulus_profile(a.n, a.m, grid);
    std::optional<lll::MeanFieldProfile> thermal;
    if (a.m >= 1) thermal = lll::thermal_profile(a.n, a.m, grid);
    CsvWriter csv(run.file("profile.csv"), {"r", "rho", "annulus", "thermal", "regime"});
    const auto regime = lll::to_string(r.profile.regime);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv << grid.r(i) << r.profile.rho[i] << annulus.rho[i] << (thermal ? thermal->rho[i] : std::nan("")) << regime;
        csv.end_row();
    }
    const auto& e = r.profile.energy;
    run.results["N"] = a.n;
    run.results["m"] = a.m;
    run.results["mu"] = r.profile.mu;
    run.results["energy"] = {{"total", e.total()}, {"potential", e.potential}, {"interaction", e.interaction}, {"entropy", e.entropy}};
    run.results["annulus_energy"] = annulus.energy.total();
    if (thermal) run.results["thermal_energy"] = thermal->energy.total();
    run.results["iterations"] = r.profile.iterations;
    run.results["residual"] = r.profile.residual;
    run.results["regime"] = regime;
    run.results["resolution_warning"] = r.resolution_warning;
}

void run_gp(const GPArgs& a, const Common& c, Run& run) {
    lll::GPOptions o;
    o.l_max = a.lmax;
    o.restarts = a.restarts;
    o.tolerance = a.tol;
    o.seed = a.seed;
    o.workers = c.workers;
    run.seed = a.seed;
    const auto r = lll::minimize_gp(a.omega, a.ng, o);
    {
        CsvWriter csv(run.file("coefficients.csv"), {"l", "re", "im", "abs2"});
        for (int l = 0; l <= r.state.l_max(); ++l) {
            const auto cl = r.state.coeffs[static_cast<std::size_t>(l)];
            csv << l << cl.real() << cl.imag() << std::norm(cl);
            csv.end_row();
        }
    }
    std::optional<lll::TFProfile> tf;
    if (a.omega > 0.0 && a.ng > 0.0) {
        auto [profile, energy] = lll::tf_profile_and_energy(a.omega, a.ng);
        tf = profile;
        run.results["tf_energy"] = energy;
        run.results["tf_lambda"] = profile.lambda;
        run.results["tf_radius"] = profile.radius();
    }
    const double bulk = tf ? tf->radius() : 0.0;
    const auto zeros = lll::vortex_zeros(r.state, bulk);
    {
        CsvWriter csv(run.file("zeros.csv"), {"re", "im", "abs", "bulk"});
        for (const auto& z : zeros.roots) {
            csv << z.real() << z.imag() << std::abs(z) << static_cast<int>(std::abs(z) < bulk);
            csv.end_row();
        }
    }
    {
        // Angle-averaged density sum_l |c_l|^2 r^{2l} e^{-r^2} / (pi l!) next to the TF profile.
        const double r_max = std::sqrt(static_cast<double>(r.state.l_max()) + 1.0) + 2.0;
        CsvWriter csv(run.file("density.csv"), {"r", "rho", "rho_tf"});
        for (std::size_t i = 0; i < a.grid_points; ++i) {
            const double rr = r_max * static_cast<double>(i) / static_cast<double>(a.grid_points - 1);
            double rho = 0.0;
            for (int l = 0; l <= r.state.l_max(); ++l) {
                const double w = std::norm(r.state.coeffs[static_cast<std::size_t>(l)]);
                if (w == 0.0) continue;
                const double log_term = (l > 0 ? 2.0 * l * std::log(rr) : 0.0) - rr * rr - std::lgamma(l + 1.0);
                rho += w * std::exp(log_term) / std::numbers::pi;
            }
            csv << rr << rho << (tf ? tf->density(rr) : std::nan(""));
            csv.end_row();
        }
    }
    run.results["energy"] = r.energy;
    run.results["gradient_norm"] = r.gradient_norm;
    run.results["converged"] = r.converged;
    run.results["best_restart"] = r.best_restart;
    run.results["best_so_far"] = r.best_so_far;
    run.results["l_max"] = r.l_max;
    run.results["truncation_warning"] = r.truncation_warning;
    run.results["bulk_vortices"] = zeros.bulk_count;
    run.results["ill_conditioned_roots"] = zeros.ill_conditioned;
    if (!r.converged) throw lll::ConvergenceError("GP descent did not converge", r.gradient_norm);
}

void run_compare(const CompareArgs& a, const Common& c, Run& run) {
    lll::GPOptions o;
    o.l_max = a.lmax;
    o.restarts = a.restarts;
    o.seed = a.seed;
    o.workers = c.workers;
    run.seed = a.seed;
    CsvWriter csv(run.file("compare.csv"), {"omega", "g", "N_omega_over_g", "E_gp", "E_exact", "ratio", "L_star"});
    bool upper_bound = true;
    for (double omega : a.omega_grid) {
        const auto r = lll::compare_gp_exact(a.n, omega, a.g, o, spectra_options(c));
        upper_bound = upper_bound && r.e_gp >= r.e_exact - 1e-8;
        csv << omega << a.g << a.n * omega / a.g << r.e_gp << r.e_exact << (r.e_gp > 0.0 ? r.e_exact / r.e_gp : std::nan(""))
            << r.L_star;
        csv.end_row();
    }
    run.results["upper_bound_holds"] = upper_bound;
}

json options_json(const CLI::App* sub) {
    json j = json::object();
    for (const auto* opt : sub->get_options()) {
        if (opt->get_lnames().empty()) continue;
        const auto& name = opt->get_lnames().front();
        if (name == "help" || name == "config") continue;
        const auto& res = opt->results();
        if (opt->get_expected_max() == 0) {
            j[name] = opt->count() > 0 ? "true" : "false";
        } else if (opt->get_expected_max() > 1) {
            if (!res.empty()) {
                j[name] = res;
                continue;
            }
            // default string looks like [a,b,c]
            auto text = opt->get_default_str();
            if (!text.empty() && text.front() == '[') text = text.substr(1, text.size() - 2);
            json list = json::array();
            std::stringstream ss(text);
            for (std::string item; std::getline(ss, item, ',');) list.push_back(item);
            j[name] = list;
        } else {
            j[name] = res.empty() ? opt->get_default_str() : res.back();
        }
    }
    return j;
}

std::string quoted(const std::string& v) { return '"' + v + '"'; }

// INI replayable with --config: the section name selects the subcommand.
void write_config(const fs::path& path, const Common& common, const std::string& name, const json& options) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw lll::InputError("cannot open output file " + path.string());
    os << "workers=" << common.workers << '\n';
    os << "out=" << quoted(common.out) << "\n\n";
    os << '[' << name << "]\n";
    for (const auto& [key, value] : options.items()) {
        os << key << '=';
        if (value.is_array()) {
            os << '[';
            for (std::size_t i = 0; i < value.size(); ++i) os << (i ? "," : "") << value[i].get<std::string>();
            os << ']';
        } else {
            os << quoted(value.get<std::string>());
        }
        os << '\n';
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"lllab: lowest-Landau-level numerics for rotating bosons"};
    app.set_config("--config", "", "Read options from an INI/TOML file (sections named after subcommands)");
    app.require_subcommand(1, 1);
    app.fallthrough();
    Common common;
    app.add_option("--workers", common.workers, "Worker threads for sector scans, MC chains and GP restarts")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
    app.add_option("--out", common.out, "Output directory")->capture_default_str();

    YrastArgs yrast;
    auto* s_yrast = app.add_subcommand("yrast", "Yrast curve I(L), gaps and kernel dimensions");
    s_yrast->add_option("--n", yrast.n, "Particles")->check(CLI::PositiveNumber)->capture_default_str();
    s_yrast->add_option("--lmax", yrast.lmax, "Largest L")->check(CLI::NonNegativeNumber)->capture_default_str();
    s_yrast->add_option("--cache-dir", yrast.cache_dir, "Operator cache directory");

    GapsArgs gaps;
    auto* s_gaps = app.add_subcommand("gaps", "Spectral gaps and the gap-conjecture check");
    s_gaps->add_option("--n", gaps.n, "Particles")->check(CLI::Range(2, 1000))->capture_default_str();
    s_gaps->add_option("--lmax", gaps.lmax, "Largest L (default N(N-1))")->capture_default_str();

    GroundArgs ground;
    auto* s_ground = app.add_subcommand("ground", "Ground state of (omega+3k)L + k sum L_i^2 + g I_N over sectors");
    s_ground->add_option("--n", ground.n, "Particles")->check(CLI::PositiveNumber)->capture_default_str();
    s_ground->add_option("--omega", ground.omega, "omega")->capture_default_str();
    s_ground->add_option("--g", ground.g, "Contact coupling")->capture_default_str();
    s_ground->add_option("--k", ground.k, "Quartic strength")->capture_default_str();
    s_ground->add_option("--lmax", ground.lmax, "Largest sector scanned (default from the lower bound)")->capture_default_str();

    PhasesArgs phases;
    auto* s_phases = app.add_subcommand("phases", "Sweep (omega, k): L_star, defect, m_opt and density regime");
    s_phases->add_option("--n", phases.n, "Particles")->check(CLI::Range(2, 8))->capture_default_str();
    s_phases->add_option("--omega-grid", phases.omega_grid, "omega values")->delimiter(',')->capture_default_str();
    s_phases->add_option("--k-grid", phases.k_grid, "k values (> 0)")->delimiter(',')->capture_default_str();
    s_phases->add_option("--g", phases.g, "Contact coupling")->capture_default_str();
    s_phases->add_option("--lmax", phases.lmax, "Largest sector scanned (default from m_opt)")->capture_default_str();
    s_phases->add_option("--ed-max-dim", phases.ed_max_dim, "Skip exact diagonalization above this sector dimension")
        ->capture_default_str();

    TrialArgs trial;
    auto* s_trial = app.add_subcommand("trial", "Giant vortex times Laughlin trial energies");
    s_trial->add_option("--n", trial.n, "Particles")->check(CLI::Range(2, 8))->capture_default_str();
    s_trial->add_option("--m-max", trial.m_max, "Largest vortex charge")->check(CLI::NonNegativeNumber)->capture_default_str();
    s_trial->add_option("--omega", trial.omega, "omega")->capture_default_str();
    s_trial->add_option("--g", trial.g, "Contact coupling")->capture_default_str();
    s_trial->add_option("--k", trial.k, "Quartic strength")->capture_default_str();
    s_trial->add_flag("--write-fock", trial.write_fock, "Write the Fock vectors as JSON");

    PlasmaArgs plasma;
    auto* s_plasma = app.add_subcommand("plasma", "Metropolis sampling of the plasma analogy");
    s_plasma->add_option("--n", plasma.n, "Particles")->check(CLI::PositiveNumber)->capture_default_str();
    s_plasma->add_option("--m", plasma.m, "Vortex charge")->check(CLI::NonNegativeNumber)->capture_default_str();
    s_plasma->add_option("--sweeps", plasma.sweeps, "Sweeps including burn-in")->capture_default_str();
    s_plasma->add_option("--burn-in", plasma.burn_in, "Burn-in sweeps")->capture_default_str();
    s_plasma->add_option("--stride", plasma.stride, "Keep every stride-th sweep")->check(CLI::PositiveNumber)->capture_default_str();
    s_plasma->add_option("--step", plasma.step, "Proposal width (0 = 0.6/sqrt(N))")->capture_default_str();
    s_plasma->add_option("--seed", plasma.seed, "Random seed")->capture_default_str();
    s_plasma->add_option("--chains", plasma.chains, "Independent chains")->check(CLI::PositiveNumber)->capture_default_str();
    s_plasma->add_option("--bins", plasma.bins, "Radial bins")->check(CLI::PositiveNumber)->capture_default_str();
    s_plasma->add_option("--rmax", plasma.rmax, "Histogram range (0 = sqrt(2+m/N)+1)")->capture_default_str();

    MeanFieldArgs mf;
    auto* s_mf = app.add_subcommand("meanfield", "Mean-field density profile");
    s_mf->add_option("--n", mf.n, "Particles")->check(CLI::PositiveNumber)->capture_default_str();
    s_mf->add_option("--m", mf.m, "Vortex charge")->check(CLI::NonNegativeNumber)->capture_default_str();
    s_mf->add_option("--tol", mf.tol, "Relative sup-norm tolerance")->capture_default_str();
    s_mf->add_option("--points", mf.points, "Grid points (0 = automatic)")->capture_default_str();
    s_mf->add_option("--rmax", mf.rmax, "Grid radius (0 = automatic)")->capture_default_str();

    GPArgs gp;
    auto* s_gp = app.add_subcommand("gp", "Gross-Pitaevskii minimization in the LLL");
    s_gp->add_option("--omega", gp.omega, "omega")->check(CLI::NonNegativeNumber)->capture_default_str();
    s_gp->add_option("--ng", gp.ng, "Coupling N g")->check(CLI::NonNegativeNumber)->capture_default_str();
    s_gp->add_option("--lmax", gp.lmax, "Initial orbital cutoff")->check(CLI::PositiveNumber)->capture_default_str();
    s_gp->add_option("--restarts", gp.restarts, "Random restarts")->check(CLI::NonNegativeNumber)->capture_default_str();
    s_gp->add_option("--tol", gp.tol, "Gradient tolerance")->capture_default_str();
    s_gp->add_option("--seed", gp.seed, "Random seed")->capture_default_str();
    s_gp->add_option("--grid-points", gp.grid_points, "Radial density samples")->check(CLI::Range(2, 1000000))->capture_default_str();

    CompareArgs cmp;
    auto* s_cmp = app.add_subcommand("compare", "N E_GP against the exact ground state energy");
    s_cmp->add_option("--n", cmp.n, "Particles")->check(CLI::Range(1, 6))->capture_default_str();
    s_cmp->add_option("--omega-grid", cmp.omega_grid, "omega values")->delimiter(',')->capture_default_str();
    s_cmp->add_option("--g", cmp.g, "Contact coupling")->capture_default_str();
    s_cmp->add_option("--lmax", cmp.lmax, "Initial GP orbital cutoff")->capture_default_str();
    s_cmp->add_option("--restarts", cmp.restarts, "GP random restarts")->capture_default_str();
    s_cmp->add_option("--seed", cmp.seed, "GP seed")->capture_default_str();

    for (auto* sub : app.get_subcommands({})) sub->configurable();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kInputError;
    }

    CLI::App* sub = app.get_subcommands().front();
    const auto started = std::chrono::steady_clock::now();
    Run run;
    run.dir = common.out;
    try {
        fs::create_directories(run.dir);
        const std::string name = sub->get_name();
        if (sub == s_yrast) run_yrast(yrast, common, run);
        else if (sub == s_gaps) run_gaps(gaps, common, run);
        else if (sub == s_ground) run_ground(ground, common, run);
        else if (sub == s_phases) run_phases(phases, common, run);
        else if (sub == s_trial) run_trial(trial, common, run);
        else if (sub == s_plasma) run_plasma(plasma, common, run);
        else if (sub == s_mf) run_meanfield(mf, common, run);
        else if (sub == s_gp) run_gp(gp, common, run);
        else if (sub == s_cmp) run_compare(cmp, common, run);

        const json options = options_json(sub);
        write_config(run.file("config.ini"), common, name, options);
        json meta;
        meta["command"] = name;
        meta["version"] = LLLAB_VERSION;
        meta["config"] = {{"workers", common.workers}, {"out", common.out}, {name, options}};
        if (run.seed) meta["seed"] = *run.seed;
        meta["wall_time_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        meta["results"] = run.results;
        write_json(run.file("metadata.json"), meta);
        out << "wrote " << run.dir.string() << '\n';
        return kOk;
    } catch (const lll::InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const lll::ResourceError& e) {
        err << "resource error: " << e.what() << '\n';
        return kResourceError;
    } catch (const lll::ConvergenceError& e) {
        err << "not converged: " << e.what() << '\n';
        return kNotConverged;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace lllab
