#include <json.hpp>

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Csv {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t col(const std::string& name) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns[i] == name) {
                return i;
            }
        }
        FAIL("missing column " << name);
        return 0;
    }
};

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string item; std::getline(ss, item, ',');) {
        out.push_back(item);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

Csv read_csv(const fs::path& path)
{
    std::ifstream in(path);
    REQUIRE(in.good());
    Csv csv;
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("#", 0) == 0) {
            csv.comments.push_back(line);
        } else if (csv.columns.empty()) {
            csv.columns = split(line);
        } else {
            csv.rows.push_back(split(line));
        }
    }
    return csv;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Workspace {
public:
    Workspace()
    {
        root_ = fs::temp_directory_path() / ("paramosc_cli_" + std::to_string(::getpid()));
        fs::remove_all(root_);
        fs::create_directories(root_);
    }
    ~Workspace() { fs::remove_all(root_); }

    fs::path dir(const std::string& name) const { return root_ / name; }

    fs::path config(const std::string& name, const std::string& text) const
    {
        const fs::path p = root_ / name;
        std::ofstream(p) << text;
        return p;
    }

    int run(const std::string& args, const std::string& env = "") const
    {
        const std::string cmd = env + " " + std::string(PARAMOSC_CLI) + " " + args + " > " +
                                (root_ / "stdout.txt").string() + " 2> " + (root_ / "stderr.txt").string();
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string stderr_text() const { return slurp(root_ / "stderr.txt"); }

private:
    fs::path root_;
};

const char* small_fpe =
    "[fpe]\ngrid_n = 801\nf_tilde = -4,-2,0,2,4,6\nmu_tilde = -6:12:19\nrefine = false\n";

} // namespace

TEST_CASE("bifurcation command")
{
    Workspace ws;
    REQUIRE(ws.run("--out " + ws.dir("a").string() + " bifurcation") == 0);
    const Csv csv = read_csv(ws.dir("a") / "bifurcation.csv");
    CHECK(csv.columns == std::vector<std::string>{"f_p", "mu_B1", "mu_B2", "mu_phase"});
    CHECK(csv.rows.size() == 101);
    REQUIRE(!csv.comments.empty());
    CHECK(csv.comments.front().rfind("# paramosc", 0) == 0);

    const auto cfg = ws.config("root2.ini", "[sweep]\ndrives = 1.4142135623730951\n");
    REQUIRE(ws.run("--config " + cfg.string() + " --out " + ws.dir("b").string() + " bifurcation") == 0);
    const Csv one = read_csv(ws.dir("b") / "bifurcation.csv");
    REQUIRE(one.rows.size() == 1);
    CHECK(std::stod(one.rows[0][one.col("mu_phase")]) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::stod(one.rows[0][one.col("mu_B2")]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("input errors exit with status 2")
{
    Workspace ws;
    const auto empty = ws.config("empty.ini", "[sweep]\ndrives =\n");
    CHECK(ws.run("--config " + empty.string() + " --out " + ws.dir("x").string() + " bifurcation") == 2);
    CHECK(ws.stderr_text().find("drives") != std::string::npos);

    const auto typo = ws.config("typo.ini", "[sweep]\ndrivez = 1:2:3\n");
    CHECK(ws.run("--config " + typo.string() + " --out " + ws.dir("x").string() + " bifurcation") == 2);
    CHECK(ws.run("--format xml bifurcation") == 2);
    CHECK(ws.run("nosuchcommand") == 2);
    const auto both = ws.config("both.ini", "[lab]\nomega0 = 1\n[scaled]\ndrive = 1.2\n");
    CHECK(ws.run("--config " + both.string() + " --out " + ws.dir("x").string() + " rates") == 2);
}

TEST_CASE("tristable rates table")
{
    Workspace ws;
    const auto cfg = ws.config("r.ini", "[rates]\nregime = tristable\n");
    REQUIRE(ws.run("--config " + cfg.string() + " --out " + ws.dir("r").string() + " rates") == 0);
    const Csv csv = read_csv(ws.dir("r") / "rates_tristable.csv");
    CHECK(csv.columns == std::vector<std::string>{"mu_p", "f_p", "regime", "status", "R_A1_tilde",
                                                  "R_A0_tilde", "R_A1", "R_A0", "Omega", "W"});
    CHECK(csv.rows.size() == 17 * 31);
    const std::string text = slurp(ws.dir("r") / "rates_tristable.csv");
    CHECK(text.find("nan") == std::string::npos);
    CHECK(text.find("inf") == std::string::npos);
    bool any_ok = false;
    for (const auto& row : csv.rows) {
        any_ok = any_ok || row[csv.col("status")] == "ok";
    }
    CHECK(any_ok);
}

TEST_CASE("fpe curves come in f_tilde order")
{
    Workspace ws;
    const auto cfg = ws.config("f.ini", small_fpe);
    REQUIRE(ws.run("--config " + cfg.string() + " --out " + ws.dir("f").string() + " fpe") == 0);
    const Csv csv = read_csv(ws.dir("f") / "fpe_nu1.csv");
    REQUIRE(csv.rows.size() == 6 * 19);
    const double expected[] = {-4, -2, 0, 2, 4, 6};
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        CHECK(std::stod(csv.rows[i][csv.col("f_tilde")]) == expected[i / 19]);
        CHECK(std::stod(csv.rows[i][csv.col("nu1_tilde")]) > 0.0);
    }
    const Csv spec = read_csv(ws.dir("f") / "fpe_spectrum.csv");
    CHECK(spec.rows.size() == 4);
}

TEST_CASE("distribution turns bimodal above threshold")
{
    Workspace ws;
    REQUIRE(ws.run("--out " + ws.dir("d").string() + " distribution") == 0);
    const Csv csv = read_csv(ws.dir("d") / "distribution_summary.csv");
    for (const auto& row : csv.rows) {
        const double f = std::stod(row[csv.col("f_p")]);
        const int modes = std::stoi(row[csv.col("modes")]);
        CHECK(modes == (f > 1.0 ? 2 : 1));
    }
}

TEST_CASE("artifacts are reproducible")
{
    Workspace ws;
    const auto cfg = ws.config("f.ini", small_fpe);
    REQUIRE(ws.run("--config " + cfg.string() + " --threads 1 --out " + ws.dir("t1").string() + " fpe") == 0);
    REQUIRE(ws.run("--config " + cfg.string() + " --threads 3 --out " + ws.dir("t3").string() + " fpe") == 0);
    REQUIRE(ws.run("--config " + cfg.string() + " --threads 1 --out " + ws.dir("u1").string() + " fpe") == 0);
    for (const char* name : {"fpe_nu1.csv", "fpe_spectrum.csv"}) {
        CHECK(slurp(ws.dir("t1") / name) == slurp(ws.dir("t3") / name));
        CHECK(slurp(ws.dir("t1") / name) == slurp(ws.dir("u1") / name));
    }

    const auto sim = ws.config("s.ini", "[simulate]\nsteps = 20000\nmfpt = false\nacf = false\n");
    REQUIRE(ws.run("--config " + sim.string() + " --seed 7 --out " + ws.dir("s1").string() + " simulate") == 0);
    REQUIRE(ws.run("--config " + sim.string() + " --seed 7 --threads 2 --out " + ws.dir("s2").string() + " simulate") == 0);
    CHECK(slurp(ws.dir("s1") / "trace.csv") == slurp(ws.dir("s2") / "trace.csv"));

    // Kernel variants are bit-for-bit interchangeable.
    REQUIRE(ws.run("--config " + sim.string() + " --seed 7 --out " + ws.dir("sc").string() + " simulate",
                   "PARAMOSC_ISA=scalar") == 0);
    CHECK(slurp(ws.dir("s1") / "trace.csv") == slurp(ws.dir("sc") / "trace.csv"));
}

TEST_CASE("json output")
{
    Workspace ws;
    REQUIRE(ws.run("--format json --out " + ws.dir("j").string() + " bifurcation") == 0);
    const auto doc = nlohmann::json::parse(slurp(ws.dir("j") / "bifurcation.json"));
    CHECK(doc["header"]["command"] == "bifurcation");
    CHECK(doc["columns"].size() == 4);
    CHECK(doc["rows"].size() == 101);
}
