#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "spectra/dirichlet.hpp"
#include "spectra/experiments.hpp"
#include "spectra/parallel.hpp"
#include "spectra/spectral_stats.hpp"
#include "spectra/zeta.hpp"

namespace spectra::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr const char* kToolName = "spectra_lab";
constexpr const char* kVersion = "0.3.0";

struct Artifact {
    fs::path path;
    std::string content;
};

/// What a subcommand produced: files to publish, the parameters that
/// reproduce them, and whether the run's own checks passed.
struct Outcome {
    std::vector<Artifact> artifacts;
    json parameters = json::object();
    int status = kOk;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every file is staged next to its target and renamed only once all of them
// have been written, so a failure leaves no partial outputs behind.
void publish(const std::vector<Artifact>& artifacts) {
    std::vector<fs::path> staged;
    try {
        for (const auto& a : artifacts) {
            if (a.path.has_parent_path()) {
                fs::create_directories(a.path.parent_path());
            }
            fs::path tmp = a.path;
            tmp += ".tmp";
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            staged.push_back(tmp);
            out << a.content;
            out.close();
            if (!out) {
                throw std::runtime_error("cannot write '" + tmp.string() + "'");
            }
        }
        for (std::size_t i = 0; i < artifacts.size(); ++i) {
            fs::rename(staged[i], artifacts[i].path);
        }
    } catch (...) {
        std::error_code ec;
        for (const auto& tmp : staged) fs::remove(tmp, ec);
        throw;
    }
}

fs::path with_suffix(const std::string& prefix, const char* suffix) { return fs::path(prefix + suffix); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string histogram_csv(const Histogram& h, const std::vector<ReferenceColumn>& refs,
                          const std::vector<double>* densities = nullptr) {
    std::ostringstream out;
    write_histogram_csv(out, h, refs, densities);
    return out.str();
}

ReferenceColumn column(const ReferenceDensity& ref) {
    return {std::string(to_string(ref.kind)), [ref](double x) { return density_eval(ref, x); }};
}

std::vector<double> uniform_edges(std::size_t bins, double lo, double hi) {
    std::vector<double> edges(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) {
        edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
    }
    edges.back() = hi;
    return edges;
}

struct EnsembleFlags {
    std::size_t n = 0;
    std::size_t samples = 0;
    std::string dist;
    std::uint64_t seed = 0;
    std::string out;

    void bind(CLI::App* cmd) {
        cmd->add_option("--n", n, "Matrix dimension")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--samples", samples, "Number of sampled matrices")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--dist", dist, "Entry distribution")
            ->required()
            ->check(CLI::IsMember({"gaussian", "uniform", "cauchy"}));
        cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
        cmd->add_option("--out", out, "Output path prefix")->required();
    }

    EnsembleConfig config() const { return {n, samples, parse_distribution(dist), seed}; }

    void record(json& p) const {
        p["n"] = n;
        p["samples"] = samples;
        p["dist"] = dist;
        p["seed"] = seed;
    }
};

struct DensityCmd {
    EnsembleFlags e;
    std::size_t bins = 100;
    std::vector<double> range{-1.5, 1.5};

    void bind(CLI::App* cmd) {
        e.bind(cmd);
        cmd->add_option("--bins", bins, "Histogram bins")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--range", range, "Histogram range lo hi")->expected(2)->capture_default_str();
    }

    Outcome run() const {
        if (!(range[0] < range[1])) {
            throw UsageError("--range needs lo < hi");
        }
        const DensityResult r = density_experiment(e.config(), bins, range[0], range[1]);
        Outcome o;
        e.record(o.parameters);
        o.parameters["bins"] = bins;
        o.parameters["range"] = range;
        const double total = static_cast<double>(r.hist.total());
        json s;
        s["subcommand"] = "ensemble-density";
        s["parameters"] = o.parameters;
        s["eigenvalues"] = r.hist.total();
        s["l1_semicircle"] = r.l1;
        s["ks_semicircle"] = r.ks;
        s["underflow"] = r.hist.underflow();
        s["overflow"] = r.hist.overflow();
        s["underflow_fraction"] = static_cast<double>(r.hist.underflow()) / total;
        s["overflow_fraction"] = static_cast<double>(r.hist.overflow()) / total;
        o.artifacts.push_back({with_suffix(e.out, ".csv"), histogram_csv(r.hist, {column(ReferenceDensity::semicircle())})});
        o.artifacts.push_back({with_suffix(e.out, ".json"), dump(s)});
        return o;
    }
};

struct SpacingCmd {
    EnsembleFlags e;
    double window = 0.2;
    std::size_t bins = 60;
    double max_spacing = 3.0;

    void bind(CLI::App* cmd) {
        e.bind(cmd);
        cmd->add_option("--window", window, "Central fraction of each spectrum, in (0, 1]")
            ->capture_default_str()
            ->check(CLI::Validator(
                [](std::string& v) {
                    const double w = std::stod(v);
                    return (w > 0.0 && w <= 1.0) ? std::string() : std::string("window must lie in (0, 1]");
                },
                "(0,1]"));
        cmd->add_option("--bins", bins, "Histogram bins")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--max-spacing", max_spacing, "Upper histogram edge")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    }

    Outcome run() const {
        const SpacingResult r = spacing_experiment(e.config(), window, bins, max_spacing);
        Outcome o;
        e.record(o.parameters);
        o.parameters["window"] = window;
        o.parameters["bins"] = bins;
        o.parameters["max-spacing"] = max_spacing;
        json s;
        s["subcommand"] = "ensemble-spacings";
        s["parameters"] = o.parameters;
        s["spacings"] = r.spacings.size();
        s["ks_wigner_goe"] = r.ks_goe;
        s["ks_wigner_gue"] = r.ks_gue;
        s["ks_poisson"] = r.ks_poisson;
        s["goe_closest"] = r.ks_goe < r.ks_gue && r.ks_goe < r.ks_poisson;
        s["overflow"] = r.hist.overflow();
        const auto refs = {column(ReferenceDensity::wigner_goe()), column(ReferenceDensity::wigner_gue()),
                           column(ReferenceDensity::poisson_spacing())};
        o.artifacts.push_back({with_suffix(e.out, ".csv"), histogram_csv(r.hist, refs)});
        o.artifacts.push_back({with_suffix(e.out, ".json"), dump(s)});
        return o;
    }
};

struct MomentsCmd {
    EnsembleFlags e;
    unsigned kmax = 0;

    void bind(CLI::App* cmd) {
        e.bind(cmd);
        cmd->add_option("--kmax", kmax, "Largest moment order")->required()->check(CLI::Range(0u, 40u));
    }

    Outcome run() const {
        const auto table = moments_table(e.config(), kmax);
        Outcome o;
        e.record(o.parameters);
        o.parameters["kmax"] = kmax;
        std::string csv = "k,mean,std_error,semicircle,difference\n";
        json rows = json::array();
        for (const auto& row : table) {
            csv += std::to_string(row.k) + "," + format_real(row.mean) + "," + format_real(row.std_error) + "," +
                   format_real(row.semicircle) + "," + format_real(row.mean - row.semicircle) + "\n";
            rows.push_back({{"k", row.k},
                            {"mean", row.mean},
                            {"std_error", row.std_error},
                            {"semicircle", row.semicircle},
                            {"difference", row.mean - row.semicircle}});
        }
        json s;
        s["subcommand"] = "moments";
        s["parameters"] = o.parameters;
        s["moments"] = rows;
        o.artifacts.push_back({with_suffix(e.out, ".csv"), csv});
        o.artifacts.push_back({with_suffix(e.out, ".json"), dump(s)});
        return o;
    }
};

json audit_json(const ZeroAudit& a) {
    json j;
    j["passed"] = a.passed;
    j["windows"] = a.windows;
    j["window_length"] = a.window_length;
    j["max_abs_mean_s"] = a.max_abs_mean_s;
    j["smooth_count"] = a.smooth_count;
    j["count"] = a.count;
    j["rescans"] = a.rescans;
    return j;
}

ZeroTable read_table(const std::string& path) {
    try {
        return load_zeros(path);
    } catch (const ZeroTableParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

struct ZerosCmd {
    double t_max = 0.0;
    std::string in;
    double oversample = 8.0;
    std::string out;

    void bind(CLI::App* cmd) {
        auto* t = cmd->add_option("--t-max", t_max, "Compute all zeros with 0 < gamma <= t-max (at most 1e4)")
                      ->check(CLI::Range(0.0, 1e4));
        auto* i = cmd->add_option("--in", in, "Ingest a zero table instead")->check(CLI::ExistingFile);
        t->excludes(i);
        i->excludes(t);
        cmd->add_option("--oversample", oversample, "Scan points per mean zero spacing")
            ->capture_default_str()
            ->check(CLI::Range(2.0, 1e3));
        cmd->add_option("--out", out, "Output path prefix")->required();
    }

    Outcome run() const {
        Outcome o;
        ZeroTable table;
        ZeroAudit audit;
        if (!in.empty()) {
            table = read_table(in);
            audit = audit_zero_table(table);
            o.parameters["in"] = in;
        } else {
            if (!(t_max > 0.0)) {
                throw UsageError("one of --t-max or --in is required");
            }
            ZeroSearchOptions opts;
            opts.oversample = oversample;
            auto c = compute_zeros(t_max, opts);
            table = std::move(c.table);
            audit = c.audit;
            o.parameters["t-max"] = t_max;
            o.parameters["oversample"] = oversample;
        }
        std::ostringstream zeros;
        write_zeros(zeros, table,
                    {"ordinates gamma of zeros 1/2 + i gamma of zeta(s)", "complete_to=" + format_real(table.complete_to),
                     "count=" + std::to_string(table.ordinates.size())});
        json s;
        s["subcommand"] = "zeta-zeros";
        s["parameters"] = o.parameters;
        s["source"] = table.source == ZeroSource::Computed ? "computed" : "file";
        s["count"] = table.ordinates.size();
        s["complete_to"] = table.complete_to;
        s["precision_hint"] = table.precision_hint;
        s["first"] = table.ordinates.empty() ? 0.0 : table.ordinates.front();
        s["last"] = table.ordinates.empty() ? 0.0 : table.ordinates.back();
        s["audit"] = audit_json(audit);
        o.artifacts.push_back({with_suffix(out, ".txt"), zeros.str()});
        o.artifacts.push_back({with_suffix(out, ".json"), dump(s)});
        o.status = audit.passed ? kOk : kAuditFailed;
        return o;
    }
};

struct StatsCmd {
    std::string in;
    std::string stat;
    std::size_t bins = 30;
    double cutoff = 3.0;
    std::size_t first = 0;
    std::string out;

    void bind(CLI::App* cmd) {
        cmd->add_option("--in", in, "Zero table")->required()->check(CLI::ExistingFile);
        cmd->add_option("--stat", stat, "Statistic")->required()->check(CLI::IsMember({"spacings", "paircorr"}));
        cmd->add_option("--bins", bins, "Bins on (0, cutoff]")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--cutoff", cutoff, "Largest unfolded difference")
            ->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--first", first, "Use only the first N ordinates (0 = all)")->capture_default_str();
        cmd->add_option("--out", out, "Output path prefix")->required();
    }

    Outcome run() const {
        ZeroTable table = read_table(in);
        if (first > 0 && first < table.ordinates.size()) {
            table.ordinates.resize(first);
            table.complete_to = table.ordinates.back();
        }
        const std::size_t unfolded = unfold(table).size();
        if (unfolded < 100) {
            throw std::runtime_error("zeta-stats needs at least 100 zeros above 2 pi e, got " +
                                     std::to_string(unfolded));
        }
        Outcome o;
        o.parameters["in"] = in;
        o.parameters["stat"] = stat;
        o.parameters["bins"] = bins;
        o.parameters["cutoff"] = cutoff;
        o.parameters["first"] = first;
        json s;
        s["subcommand"] = "zeta-stats";
        s["parameters"] = o.parameters;
        s["zeros_used"] = table.ordinates.size();
        s["unfolded"] = unfolded;
        const auto montgomery = [](double x) { return density_eval(ReferenceDensity::montgomery(), x); };
        if (stat == "spacings") {
            if (!(cutoff > 0.0)) {
                throw UsageError("--cutoff must be positive for spacings");
            }
            const Histogram h = zeta_spacing_histogram(table, uniform_edges(bins, 0.0, cutoff));
            const double gue = l1_histogram_distance(h, ReferenceDensity::wigner_gue());
            const double poisson = l1_histogram_distance(h, ReferenceDensity::poisson_spacing());
            s["spacings"] = h.total();
            s["l1_wigner_gue"] = gue;
            s["l1_poisson"] = poisson;
            s["l1_wigner_goe"] = l1_histogram_distance(h, ReferenceDensity::wigner_goe());
            s["closer_to_gue_than_poisson"] = gue < poisson;
            const auto refs = {column(ReferenceDensity::wigner_gue()), column(ReferenceDensity::poisson_spacing()),
                               column(ReferenceDensity::wigner_goe())};
            o.artifacts.push_back({with_suffix(out, ".csv"), histogram_csv(h, refs)});
        } else {
            const PairCorrelation pc = zeta_pair_correlation(table, bins, cutoff);
            const auto values = pc.values();
            const auto densities = pc.densities();
            s["points"] = pc.points;
            s["pairs"] = pc.hist.in_range();
            s["l1_montgomery"] = pc.hist.bins() ? l1_integrated_distance(pc.hist, values, montgomery) : 0.0;
            s["pair_convention"] = "ordered pairs with positive difference, count / N";
            o.artifacts.push_back({with_suffix(out, ".csv"),
                                   histogram_csv(pc.hist, {column(ReferenceDensity::montgomery())}, &densities)});
        }
        o.artifacts.push_back({with_suffix(out, ".json"), dump(s)});
        return o;
    }
};

struct ExplicitCmd {
    std::string in;
    double u_max = 0.0;
    double p_max = 0.0;
    double tolerance = 1e-2;
    std::string out;

    void bind(CLI::App* cmd) {
        cmd->add_option("--in", in, "Zero table")->required()->check(CLI::ExistingFile);
        cmd->add_option("--u-max", u_max, "Support of g")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--p-max", p_max, "Prime-power cutoff (0 = ceil(e^u_max))")->capture_default_str();
        cmd->add_option("--tolerance", tolerance, "Largest acceptable zero-tail bound")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--out", out, "Output path prefix")->required();
    }

    Outcome run() const {
        const ZeroTable table = read_table(in);
        const auto r = explicit_formula_check(table, TestFunction::fejer_plain(u_max), p_max, tolerance);
        Outcome o;
        o.parameters["in"] = in;
        o.parameters["u-max"] = u_max;
        o.parameters["p-max"] = p_max;
        o.parameters["tolerance"] = tolerance;
        json s;
        s["lhs"] = r.lhs;
        s["rhs"] = r.rhs;
        s["abs_diff"] = r.abs_diff;
        s["truncation_estimate"] = r.truncation_estimate;
        s["u_max"] = r.u_max;
        s["p_max"] = r.p_max;
        s["zeros_used"] = r.zeros_used;
        s["complete_to"] = table.complete_to;
        s["phi_half_i"] = r.phi_half_i;
        s["prime_term"] = r.prime_term;
        s["archimedean_term"] = r.archimedean_term;
        s["quadrature_error"] = r.quadrature_error;
        s["prime_powers_used"] = r.prime_powers_used;
        s["within_estimate"] = r.abs_diff <= r.truncation_estimate + r.quadrature_error;
        o.artifacts.push_back({with_suffix(out, ".json"), dump(s)});
        return o;
    }
};

struct OneLevelCmd {
    std::uint64_t m = 0;
    double sigma = 0.0;
    std::string out;

    void bind(CLI::App* cmd) {
        cmd->add_option("--m", m, "Prime modulus")->required();
        cmd->add_option("--sigma", sigma, "Support of phi_hat, below 2")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--out", out, "Output path prefix")->required();
    }

    Outcome run() const {
        if (m < 5 || !is_prime(m)) {
            throw UsageError("--m must be a prime >= 5");
        }
        if (!(sigma < 2.0)) {
            throw UsageError("--sigma must be below 2: the family average only controls the prime sums there");
        }
        const PrimeTable primes = sieve(std::max<std::uint64_t>(2, required_sieve_limit(m, sigma)));
        const auto r = one_level_density(m, TestFunction::fejer_two_pi(sigma), primes);
        Outcome o;
        o.parameters["m"] = m;
        o.parameters["sigma"] = sigma;
        json s;
        s["m"] = r.m;
        s["sigma"] = r.sigma;
        s["integral_phi"] = r.integral_phi;
        s["value"] = r.value;
        s["deviation"] = r.deviation;
        s["bound"] = r.bound;
        s["primes_used"] = r.primes_used;
        s["generator"] = r.generator;
        s["decay_scale"] = r.decay_scale;
        s["first_sum"] = r.first_sum;
        s["second_sum"] = r.second_sum;
        s["prime_cutoff"] = r.prime_cutoff;
        s["sieve_limit"] = primes.limit;
        o.artifacts.push_back({with_suffix(out, ".json"), dump(s)});
        return o;
    }
};

// Flags that rebuild a run from its recorded parameters.
std::vector<std::string> replay_args(const json& manifest, const std::string& out) {
    std::vector<std::string> args{kToolName, manifest.at("subcommand").get<std::string>()};
    for (const auto& [key, value] : manifest.at("parameters").items()) {
        args.push_back("--" + key);
        const auto push = [&](const json& v) {
            if (v.is_string()) {
                args.push_back(v.get<std::string>());
            } else if (v.is_number_float()) {
                args.push_back(format_real(v.get<double>()));
            } else {
                args.push_back(v.dump());
            }
        };
        if (value.is_array()) {
            for (const auto& v : value) push(v);
        } else {
            push(value);
        }
    }
    args.push_back("--out");
    args.push_back(out);
    return args;
}

int execute(const std::vector<std::string>& args, bool nested);

int replay(const std::string& manifest_path, const std::string& out_override) {
    std::ifstream in(manifest_path);
    if (!in) {
        throw UsageError("cannot open manifest '" + manifest_path + "'");
    }
    const json manifest = json::parse(in);
    const std::string out = out_override.empty() ? manifest.at("out").get<std::string>() : out_override;
    return execute(replay_args(manifest, out), true);
}

int execute(const std::vector<std::string>& args, bool nested) {
    CLI::App app{"Spectral statistics of random matrices, zeta zeros and Dirichlet families", kToolName};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = OpenMP default)")
        ->envname("SPECTRA_LAB_THREADS")
        ->check(CLI::NonNegativeNumber);

    DensityCmd density;
    SpacingCmd spacings;
    MomentsCmd moments;
    ZerosCmd zeros;
    StatsCmd stats;
    ExplicitCmd explicit_formula;
    OneLevelCmd one_level;
    density.bind(app.add_subcommand("ensemble-density", "Semicircle histogram of normalized eigenvalues"));
    spacings.bind(app.add_subcommand("ensemble-spacings", "Bulk nearest-neighbour spacings"));
    moments.bind(app.add_subcommand("moments", "Ensemble moments against the semicircle"));
    zeros.bind(app.add_subcommand("zeta-zeros", "Compute or ingest zeta zeros with a count audit"));
    stats.bind(app.add_subcommand("zeta-stats", "Spacing or pair-correlation statistics of zeta zeros"));
    explicit_formula.bind(app.add_subcommand("explicit-formula", "Both sides of the explicit formula"));
    one_level.bind(app.add_subcommand("one-level", "Dirichlet family 1-level density prime side"));
    std::string manifest_path;
    std::string replay_out;
    auto* rep = app.add_subcommand("replay", "Re-run a recorded manifest");
    rep->add_option("--manifest", manifest_path, "Manifest written by an earlier run")->required();
    rep->add_option("--out", replay_out, "Write to this prefix instead of the recorded one");

    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    if (!nested) {
        set_thread_count(threads);
    }

    if (rep->parsed()) {
        return replay(manifest_path, replay_out);
    }

    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    std::string name;
    std::string out;
    if (app.got_subcommand("ensemble-density")) {
        outcome = density.run();
        out = density.e.out;
    } else if (app.got_subcommand("ensemble-spacings")) {
        outcome = spacings.run();
        out = spacings.e.out;
    } else if (app.got_subcommand("moments")) {
        outcome = moments.run();
        out = moments.e.out;
    } else if (app.got_subcommand("zeta-zeros")) {
        outcome = zeros.run();
        out = zeros.out;
    } else if (app.got_subcommand("zeta-stats")) {
        outcome = stats.run();
        out = stats.out;
    } else if (app.got_subcommand("explicit-formula")) {
        outcome = explicit_formula.run();
        out = explicit_formula.out;
    } else {
        outcome = one_level.run();
        out = one_level.out;
    }
    name = app.get_subcommands().front()->get_name();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json manifest;
    manifest["tool"] = kToolName;
    manifest["version"] = kVersion;
    manifest["subcommand"] = name;
    manifest["parameters"] = outcome.parameters;
    manifest["seed"] = outcome.parameters.contains("seed") ? outcome.parameters["seed"] : json();
    manifest["out"] = out;
    json paths = json::array();
    for (const auto& a : outcome.artifacts) paths.push_back(a.path.string());
    manifest["artifacts"] = paths;
    manifest["threads"] = thread_count();
    manifest["duration_seconds"] = seconds;
    manifest["status"] = outcome.status;
    outcome.artifacts.push_back({with_suffix(out, ".manifest.json"), manifest.dump() + "\n"});
    publish(outcome.artifacts);

    for (std::size_t i = 0; i + 1 < outcome.artifacts.size(); ++i) {
        std::cout << outcome.artifacts[i].path.string() << '\n';
    }
    if (outcome.status == kAuditFailed) {
        std::cerr << "zero-count audit failed; see " << with_suffix(out, ".json").string() << '\n';
    }
    return outcome.status;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    try {
        return execute(args, false);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ZeroAuditError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kAuditFailed;
    } catch (const InsufficientZerosError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInsufficientZeros;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace spectra::cli
