// Acceptance driver: runs every criterion end to end through the command-line
// driver and prints one PASS/FAIL line per criterion. Exit code 0 only when every
// criterion passes or failed criteria were explicitly allowed with --allow-fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <json.hpp>

#include "cli.hpp"
#include "mp_oracle.hpp"
#include "spectra/densities.hpp"
#include "spectra/dirichlet.hpp"
#include "spectra/eigen.hpp"
#include "spectra/ensembles.hpp"
#include "spectra/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spectra;

namespace {

fs::path g_work;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string p(const std::string& name) { return (g_work / name).string(); }

void lab(std::vector<std::string> args, int expected = cli::kOk) {
    args.insert(args.begin(), "spectra_lab");
    // The driver lists written artifacts on stdout; keep only the verdict lines.
    std::ostringstream sink;
    auto* saved = std::cout.rdbuf(sink.rdbuf());
    const int code = cli::run(args);
    std::cout.rdbuf(saved);
    if (code != expected) {
        std::string joined;
        for (const auto& a : args) joined += " " + a;
        throw std::runtime_error("exit code " + std::to_string(code) + " from" + joined);
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json load(const std::string& path) { return json::parse(slurp(path)); }

Verdict semicircle() {
    lab({"ensemble-density", "--n", "400", "--samples", "500", "--dist", "gaussian", "--out", p("c1")});
    const double l1 = load(p("c1.json"))["l1_semicircle"];
    return {l1 <= 0.05, "L1=" + fmt("%.4f", l1) + " (<= 0.05)"};
}

Verdict cauchy_density() {
    lab({"ensemble-density", "--n", "400", "--samples", "500", "--dist", "cauchy", "--out", p("c2")});
    const auto s = load(p("c2.json"));
    const double ks = s["ks_semicircle"];
    const double outside = s["underflow_fraction"].get<double>() + s["overflow_fraction"].get<double>();
    return {ks >= 0.05 && outside > 0.0,
            "KS=" + fmt("%.4f", ks) + " (>= 0.05), mass outside [-1.5,1.5]=" + fmt("%.4g", outside) + " (> 0)"};
}

Verdict spacing_universality() {
    bool pass = true;
    std::string detail;
    for (const char* dist : {"uniform", "cauchy"}) {
        const std::string out = p(std::string("c3_") + dist);
        lab({"ensemble-spacings", "--n", "300", "--samples", "5000", "--dist", dist, "--window", "0.2", "--out", out});
        const auto s = load(out + ".json");
        const double goe = s["ks_wigner_goe"], gue = s["ks_wigner_gue"], poisson = s["ks_poisson"];
        pass = pass && goe <= 0.02 && goe < gue && goe < poisson;
        detail += std::string(detail.empty() ? "" : "; ") + dist + ": KS_GOE=" + fmt("%.4f", goe) +
                  " KS_GUE=" + fmt("%.4f", gue) + " KS_Poisson=" + fmt("%.4f", poisson);
    }
    return {pass, detail + " (KS_GOE <= 0.02 and smallest)"};
}

Verdict moments() {
    lab({"moments", "--n", "400", "--samples", "500", "--dist", "gaussian", "--kmax", "6", "--out", p("c4")});
    const auto rows = load(p("c4.json"))["moments"];
    const std::vector<std::pair<unsigned, double>> limits{{2, 0.005}, {3, 0.01}, {4, 0.01}, {6, 0.015}};
    bool pass = true;
    std::string detail;
    for (const auto& [k, tol] : limits) {
        const auto it = std::find_if(rows.begin(), rows.end(), [k = k](const json& r) { return r["k"] == k; });
        if (it == rows.end()) throw std::runtime_error("moment " + std::to_string(k) + " missing");
        const auto& row = *it;
        const double diff = std::abs(row["mean"].get<double>() - semicircle_moment(k));
        pass = pass && diff <= tol;
        detail += (detail.empty() ? "" : " ") + std::string("|M") + std::to_string(k) + "-C|=" + fmt("%.2e", diff);
    }
    return {pass, detail};
}

Verdict exact_algebra() {
    std::size_t moduli = 0;
    double worst_sum = 0.0;
    bool exact = true;
    for (std::uint64_t m = 3; m <= 1009; m += 2) {
        if (!is_prime(m)) continue;
        ++moduli;
        const CharacterTable t(m);
        // Sum over characters for fixed n.
        for (std::uint64_t n = 1; n < m; ++n) {
            exact = exact && character_sum_all(t, n) == (n == 1 ? static_cast<std::int64_t>(m - 1) : 0);
        }
        // Sum over residues for fixed character.
        for (std::uint64_t l = 0; l < t.order(); ++l) {
            std::complex<double> s = 0.0;
            for (std::uint64_t n = 1; n < m; ++n) s += t.chi(l, n);
            const double expected = l == 0 ? static_cast<double>(m - 1) : 0.0;
            worst_sum = std::max(worst_sum, std::abs(s - expected) / static_cast<double>(m));
            exact = exact && std::llround(s.real()) == std::llround(expected) && std::abs(s.imag()) < 0.5;
        }
    }

    double worst_trace = 0.0;
    for (std::size_t n = 1; n <= 12; ++n) {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const auto a = sample_matrix(n, EntryDistribution::StandardGaussian, Seed{77, 100 * n + s});
            const auto spec = eigenvalues(a);
            for (unsigned k = 1; k <= 8; ++k) {
                double sum = 0.0, scale = 0.0;
                for (double l : spec.values) {
                    sum += std::pow(l, k);
                    scale += std::pow(std::abs(l), k);
                }
                worst_trace = std::max(worst_trace, std::abs(sum - trace_power(a, k)) / scale);
            }
        }
    }

    double worst_weibull = 0.0;
    for (double x = 0.0; x <= 6.0; x += 0.01) {
        worst_weibull = std::max(worst_weibull, std::abs(density_eval(ReferenceDensity::weibull(1.0, 1.0), x) - std::exp(-x)));
        const double surmise = M_PI / 2.0 * x * std::exp(-M_PI * x * x / 4.0);
        worst_weibull = std::max(
            worst_weibull, std::abs(density_eval(ReferenceDensity::weibull(2.0, 2.0 / std::sqrt(M_PI)), x) - surmise));
    }

    boost::math::quadrature::exp_sinh<double> half;
    boost::math::quadrature::tanh_sinh<double> finite;
    double worst_mass = std::abs(
        finite.integrate([](double x) { return density_eval(ReferenceDensity::semicircle(), x); }, -1.0, 1.0) - 1.0);
    for (const auto& law : {ReferenceDensity::wigner_goe(), ReferenceDensity::wigner_gue(),
                            ReferenceDensity::poisson_spacing(), ReferenceDensity::weibull(1.5, 0.8),
                            ReferenceDensity::weibull(2.0, 2.0 / std::sqrt(M_PI))}) {
        worst_mass = std::max(worst_mass,
                              std::abs(half.integrate([&](double x) { return density_eval(law, x); }, 0.0, INFINITY) - 1.0));
    }
    double worst_mean = 0.0;
    for (const auto& law : {ReferenceDensity::wigner_goe(), ReferenceDensity::wigner_gue()}) {
        worst_mean = std::max(worst_mean,
                              std::abs(half.integrate([&](double x) { return x * density_eval(law, x); }, 0.0, INFINITY) - 1.0));
    }
    const bool pass = exact && worst_sum < 1e-8 && worst_trace <= 1e-8 && worst_weibull <= 1e-12 &&
                      worst_mass <= 1e-8 && worst_mean <= 1e-8;
    return {pass, std::to_string(moduli) + " moduli orthogonal=" + (exact ? "exact" : "NO") +
                      ", trace rel err=" + fmt("%.1e", worst_trace) + ", Weibull err=" + fmt("%.1e", worst_weibull) +
                      ", mass err=" + fmt("%.1e", worst_mass) + ", mean err=" + fmt("%.1e", worst_mean)};
}

Verdict zeta_zeros() {
    lab({"zeta-zeros", "--t-max", "100", "--out", p("c6")});
    const auto s = load(p("c6.json"));
    const std::size_t count = s["count"];
    const double first = s["first"];
    const auto oracle = oracle::zeros(10.0, 15.0, 0.5);
    const int oracle_count = oracle::sign_changes(1.0, 100.0, 0.25);
    const double oracle_first = static_cast<double>(oracle.at(0));
    const bool audit = s["audit"]["passed"];
    return {count == 29 && oracle_count == 29 && std::abs(first - 14.134725) <= 1e-5 &&
                std::abs(first - oracle_first) <= 1e-9 && audit,
            "count=" + std::to_string(count) + " (oracle " + std::to_string(oracle_count) + "), first=" +
                fmt("%.10f", first) + " (oracle " + fmt("%.10f", oracle_first) + "), audit " + (audit ? "PASS" : "FAIL")};
}

Verdict explicit_formula() {
    lab({"zeta-zeros", "--t-max", "5000", "--out", p("c7_zeros")});
    lab({"explicit-formula", "--in", p("c7_zeros.txt"), "--u-max", "2", "--out", p("c7")});
    lab({"explicit-formula", "--in", p("c7_zeros.txt"), "--u-max", "0.5", "--tolerance", "0.05", "--out", p("c7_small")});
    const auto s = load(p("c7.json"));
    const auto small = load(p("c7_small.json"));
    const double diff = s["abs_diff"], est = s["truncation_estimate"];
    const double prime_small = small["prime_term"];
    return {diff <= est && est <= 1e-2 && prime_small == 0.0,
            "|lhs-rhs|=" + fmt("%.3e", diff) + " <= estimate=" + fmt("%.3e", est) + " <= 1e-2; u_max=0.5 prime term=" +
                fmt("%g", prime_small)};
}

Verdict pair_correlation() {
    lab({"zeta-zeros", "--t-max", "10000", "--out", p("c8_zeros")});
    lab({"zeta-stats", "--in", p("c8_zeros.txt"), "--stat", "paircorr", "--first", "10000", "--out", p("c8_pair")});
    lab({"zeta-stats", "--in", p("c8_zeros.txt"), "--stat", "spacings", "--first", "10000", "--out", p("c8_spacing")});
    const double l1 = load(p("c8_pair.json"))["l1_montgomery"];
    const auto sp = load(p("c8_spacing.json"));
    const double gue = sp["l1_wigner_gue"], poisson = sp["l1_poisson"];
    return {l1 <= 0.08 && gue < poisson, "pair-correlation L1=" + fmt("%.4f", l1) + " (<= 0.08); spacing L1 GUE=" +
                                              fmt("%.4f", gue) + " < Poisson=" + fmt("%.4f", poisson)};
}

Verdict one_level() {
    bool pass = true;
    double previous = INFINITY;
    std::string detail;
    for (const char* m : {"1009", "10007", "100003"}) {
        lab({"one-level", "--m", m, "--sigma", "1", "--out", p(std::string("c9_") + m)});
        const auto s = load(p(std::string("c9_") + m + ".json"));
        const double dev = s["deviation"], bound = s["bound"];
        pass = pass && dev <= bound && dev < previous;
        previous = dev;
        detail += std::string(detail.empty() ? "" : ", ") + "m=" + m + " dev=" + fmt("%.3e", dev) + " <= " +
                  fmt("%.3e", bound);
    }
    return {pass, detail + ", decreasing"};
}

// Reduced problem sizes; the property checked is byte identity, not accuracy.
Verdict reproducibility() {
    lab({"zeta-zeros", "--t-max", "600", "--out", p("r_zeros")});
    const std::vector<std::vector<std::string>> runs{
        {"ensemble-density", "--n", "80", "--samples", "12", "--dist", "cauchy", "--seed", "5", "--out", p("r_density")},
        {"ensemble-spacings", "--n", "80", "--samples", "12", "--dist", "uniform", "--seed", "6", "--out", p("r_spacings")},
        {"moments", "--n", "60", "--samples", "16", "--dist", "gaussian", "--kmax", "8", "--out", p("r_moments")},
        {"zeta-zeros", "--t-max", "300", "--out", p("r_compute")},
        {"zeta-zeros", "--in", p("r_zeros.txt"), "--out", p("r_ingest")},
        {"zeta-stats", "--in", p("r_zeros.txt"), "--stat", "spacings", "--out", p("r_stat_spacings")},
        {"zeta-stats", "--in", p("r_zeros.txt"), "--stat", "paircorr", "--out", p("r_stat_pair")},
        {"explicit-formula", "--in", p("r_zeros.txt"), "--u-max", "1", "--tolerance", "0.2", "--out", p("r_explicit")},
        {"one-level", "--m", "10007", "--sigma", "1.5", "--out", p("r_one_level")},
    };
    std::size_t compared = 0;
    std::vector<std::string> mismatches;
    for (const auto& args : runs) {
        lab(args);
        const std::string out = args.back();
        const auto manifest = load(out + ".manifest.json");
        for (int threads : {1, 4, 8}) {
            const std::string replay = out + "_t" + std::to_string(threads);
            lab({"--threads", std::to_string(threads), "replay", "--manifest", out + ".manifest.json", "--out", replay});
            for (const auto& artifact : manifest["artifacts"]) {
                const std::string original = artifact.get<std::string>();
                const std::string copy = replay + original.substr(out.size());
                ++compared;
                if (slurp(original) != slurp(copy)) mismatches.push_back(copy);
            }
        }
    }
    std::string detail = std::to_string(runs.size()) + " runs, " + std::to_string(compared) +
                         " artifacts compared at 1/4/8 threads";
    for (const auto& m : mismatches) detail += "; differs: " + m;
    return {mismatches.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::string work = (fs::temp_directory_path() / "spectra_acceptance").string();
    std::vector<int> allowed;
    std::vector<int> only;
    app.add_option("--work-dir", work, "Directory for artifacts")->capture_default_str();
    app.add_option("--allow-fail", allowed, "Criteria whose failure does not change the exit code");
    app.add_option("--only", only, "Run only these criteria");
    CLI11_PARSE(app, argc, argv);
    g_work = work;
    fs::create_directories(g_work);

    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"semicircle law", semicircle},
        {"cauchy density non-universality", cauchy_density},
        {"spacing universality", spacing_universality},
        {"moment convergence", moments},
        {"exact algebra", exact_algebra},
        {"zeta zeros to 100", zeta_zeros},
        {"explicit formula", explicit_formula},
        {"pair correlation of zeta zeros", pair_correlation},
        {"dirichlet 1-level density", one_level},
        {"reproducibility", reproducibility},
    };
    const std::set<int> allow(allowed.begin(), allowed.end());
    const std::set<int> selected(only.begin(), only.end());
    int unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (v.pass ? "PASS" : "FAIL") << " " << id << " " << criteria[i].first << ": " << v.detail << " ["
                  << fmt("%.1f", seconds) << " s]" << (v.pass || !allow.count(id) ? "" : " (failure allowed)")
                  << std::endl;
        if (!v.pass && !allow.count(id)) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
