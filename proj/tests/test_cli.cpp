#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"
#include "spectra/parallel.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using spectra::cli::run;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("spectra_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        saved_ = spectra::thread_count();
    }
    void TearDown() override {
        fs::remove_all(dir_);
        spectra::set_thread_count(saved_);
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    static int lab(std::vector<std::string> args) {
        args.insert(args.begin(), "spectra_lab");
        return run(args);
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    static json load(const std::string& p) { return json::parse(slurp(p)); }

    std::size_t file_count() const {
        return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir_), fs::directory_iterator()));
    }

    fs::path dir_;
    int saved_ = 0;
};

}  // namespace

TEST_F(CliTest, UsageErrorsExitTwoAndWriteNothing) {
    EXPECT_EQ(lab({}), spectra::cli::kUsage);
    EXPECT_EQ(lab({"no-such-command"}), spectra::cli::kUsage);
    EXPECT_EQ(lab({"ensemble-density", "--n", "10", "--samples", "2", "--out", path("a")}), spectra::cli::kUsage);
    EXPECT_EQ(lab({"ensemble-density", "--n", "10", "--samples", "2", "--dist", "laplace", "--out", path("a")}),
              spectra::cli::kUsage);
    EXPECT_EQ(lab({"ensemble-spacings", "--n", "10", "--samples", "2", "--dist", "gaussian", "--window", "1.5",
                   "--out", path("a")}),
              spectra::cli::kUsage);
    EXPECT_EQ(lab({"zeta-zeros", "--out", path("z")}), spectra::cli::kUsage);
    EXPECT_EQ(lab({"zeta-zeros", "--t-max", "20000", "--out", path("z")}), spectra::cli::kUsage);
    EXPECT_EQ(lab({"one-level", "--m", "1001", "--sigma", "1", "--out", path("o")}), spectra::cli::kUsage);
    EXPECT_EQ(lab({"one-level", "--m", "1009", "--sigma", "2", "--out", path("o")}), spectra::cli::kUsage);
    EXPECT_EQ(lab({"zeta-stats", "--in", path("missing.txt"), "--stat", "spacings", "--out", path("s")}),
              spectra::cli::kUsage);
    EXPECT_EQ(file_count(), 0u);
}

TEST_F(CliTest, EnsembleDensityWritesArtifacts) {
    ASSERT_EQ(lab({"ensemble-density", "--n", "40", "--samples", "5", "--dist", "gaussian", "--seed", "3", "--out",
                   path("d")}),
              0);
    EXPECT_TRUE(fs::exists(path("d.csv")));
    const auto s = load(path("d.json"));
    EXPECT_TRUE(s.contains("l1_semicircle"));
    const auto m = load(path("d.manifest.json"));
    EXPECT_EQ(m["subcommand"], "ensemble-density");
    EXPECT_EQ(m["seed"], 3);
    EXPECT_EQ(m["status"], 0);
    EXPECT_EQ(slurp(path("d.manifest.json")).find('\n'), slurp(path("d.manifest.json")).size() - 1);
    EXPECT_EQ(file_count(), 3u);
}

TEST_F(CliTest, ZetaZerosToHundred) {
    ASSERT_EQ(lab({"zeta-zeros", "--t-max", "100", "--out", path("z")}), 0);
    const auto s = load(path("z.json"));
    EXPECT_EQ(s["count"], 29);
    EXPECT_TRUE(s["audit"]["passed"].get<bool>());
    ASSERT_EQ(lab({"zeta-zeros", "--in", path("z.txt"), "--out", path("z2")}), 0);
    EXPECT_EQ(load(path("z2.json"))["count"], 29);
    EXPECT_EQ(slurp(path("z.txt")), slurp(path("z2.txt")));
}

TEST_F(CliTest, IncompleteTableFailsAudit) {
    ASSERT_EQ(lab({"zeta-zeros", "--t-max", "120", "--out", path("z")}), 0);
    std::istringstream in(slurp(path("z.txt")));
    std::ofstream out(path("holed.txt"));
    std::string line;
    int data = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#' && (++data == 10 || data == 11)) continue;
        out << line << '\n';
    }
    out.close();
    EXPECT_EQ(lab({"zeta-zeros", "--in", path("holed.txt"), "--out", path("h")}), spectra::cli::kAuditFailed);
    EXPECT_FALSE(load(path("h.json"))["audit"]["passed"].get<bool>());
}

TEST_F(CliTest, ReplayIsByteIdentical) {
    ASSERT_EQ(lab({"ensemble-spacings", "--n", "40", "--samples", "6", "--dist", "cauchy", "--seed", "11",
                   "--window", "0.3", "--out", path("s")}),
              0);
    ASSERT_EQ(lab({"--threads", "3", "replay", "--manifest", path("s.manifest.json"), "--out", path("r")}), 0);
    EXPECT_EQ(slurp(path("s.csv")), slurp(path("r.csv")));
    EXPECT_EQ(slurp(path("s.json")), slurp(path("r.json")));
    const auto a = load(path("s.manifest.json"));
    const auto b = load(path("r.manifest.json"));
    EXPECT_EQ(a["parameters"], b["parameters"]);
}

TEST_F(CliTest, ExplicitFormulaSmallSupport) {
    ASSERT_EQ(lab({"zeta-zeros", "--t-max", "2000", "--out", path("z")}), 0);
    ASSERT_EQ(lab({"explicit-formula", "--in", path("z.txt"), "--u-max", "0.5", "--tolerance", "0.05", "--out", path("e")}), 0);
    const auto s = load(path("e.json"));
    EXPECT_EQ(s["prime_term"], 0.0);
    EXPECT_TRUE(s["within_estimate"].get<bool>());
    EXPECT_EQ(lab({"explicit-formula", "--in", path("z.txt"), "--u-max", "3", "--tolerance", "1e-6", "--out",
                   path("f")}),
              spectra::cli::kInsufficientZeros);
    EXPECT_FALSE(fs::exists(path("f.json")));
}

TEST_F(CliTest, OneLevelJson) {
    ASSERT_EQ(lab({"one-level", "--m", "1009", "--sigma", "1.5", "--out", path("o")}), 0);
    const auto s = load(path("o.json"));
    for (const char* key : {"m", "sigma", "integral_phi", "value", "deviation", "bound", "primes_used"})
        EXPECT_TRUE(s.contains(key)) << key;
    EXPECT_EQ(s["m"], 1009);
    EXPECT_LT(s["deviation"].get<double>(), s["bound"].get<double>());
}

TEST_F(CliTest, ThreadsFromEnvironment) {
    ::setenv("SPECTRA_LAB_THREADS", "2", 1);
    const int code = lab({"one-level", "--m", "101", "--sigma", "1", "--out", path("o")});
    ::unsetenv("SPECTRA_LAB_THREADS");
    ASSERT_EQ(code, 0);
    EXPECT_EQ(load(path("o.manifest.json"))["threads"], 2);
    ASSERT_EQ(lab({"--threads", "1", "one-level", "--m", "101", "--sigma", "1", "--out", path("p")}), 0);
    EXPECT_EQ(load(path("p.manifest.json"))["threads"], 1);
    EXPECT_EQ(slurp(path("o.json")), slurp(path("p.json")));
}
