#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const char* cli = std::getenv("QOE_CLI");
    REQUIRE(cli != nullptr);
    std::string cmd = std::string(cli) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

int column_index(const std::vector<std::string>& header, const std::string& name) {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return int(i);
    return -1;
}

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("correlations --help").exit_code == 0);
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("--no-such-flag").exit_code == 1);
    CHECK(run_cli("cycle --variable bogus --lo 0 --hi 1 --points 3").exit_code == 1);
    CHECK(run_cli("cycle --lo 2 --hi 1 --points 3").exit_code == 1);
    // swept variable pinned as a fixed value
    CHECK(run_cli("cycle --variable xi --xi 2 --lo 0 --hi 1 --points 3").exit_code == 1);
}

TEST_CASE("correlations sweep reproduces the entanglement threshold") {
    auto r = run_cli("correlations --beta 0.3 --omega 6 --lo 0 --hi 8 --points 161");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.output);
    REQUIRE(rows.size() == 162);
    CHECK(rows[0] == std::vector<std::string>{"xi", "discord", "concurrence"});
    // first data row is the uncorrelated pair
    CHECK(std::abs(std::stod(rows[1][0])) == 0.0);
    CHECK(std::abs(std::stod(rows[1][1])) < 1e-12);
    CHECK(std::stod(rows[1][2]) == 0.0);
    // concurrence switches on at arcsinh(1)/beta = 2.9379...
    double prev_q = -1.0;
    for (size_t i = 1; i < rows.size(); ++i) {
        double xi = std::stod(rows[i][0]);
        double q = std::stod(rows[i][1]);
        double c = std::stod(rows[i][2]);
        CHECK(q >= prev_q);
        prev_q = q;
        if (xi < 2.9379) CHECK(c == 0.0);
        if (xi > 2.9380) CHECK(c > 0.0);
    }
}

TEST_CASE("cycle sweep shows the three operating modes in order") {
    auto r = run_cli("cycle --variable discord --lo 0.0001 --hi 0.6 --points 61");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.output);
    REQUIRE(rows.size() == 62);
    int mode_col = column_index(rows[0], "mode");
    int cv_col = column_index(rows[0], "cv_power");
    int tur_col = column_index(rows[0], "tur_bound");
    int eta_col = column_index(rows[0], "eta_or_cop");
    REQUIRE(mode_col >= 0);
    std::vector<std::string> order;
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto& mode = rows[i][mode_col];
        if (order.empty() || order.back() != mode) order.push_back(mode);
        if (mode == "engine") {
            CHECK(std::stod(rows[i][cv_col]) >= std::stod(rows[i][tur_col]));
            CHECK(std::stod(rows[i][eta_col]) > 0.0);
        }
    }
    CHECK(order == std::vector<std::string>{"refrigerator", "heater", "engine"});
}

TEST_CASE("config file values are used and flags override them") {
    const char* tmp = "/tmp/qoe_test_config.txt";
    {
        std::ofstream f(tmp);
        f << "# engine configuration\n";
        f << "omega_h = 3.8\n";
        f << "xi = 2.0\n";
        f << "tau_dri = 1.6\n";
    }
    auto file_run = run_cli(std::string("cycle --config ") + tmp +
                            " --variable discord --lo 0.01 --hi 0.2 --points 3");
    auto flag_run = run_cli("cycle --omega-h 3.8 --xi 2.0 --tau-dri 1.6 "
                            "--variable discord --lo 0.01 --hi 0.2 --points 3");
    REQUIRE(file_run.exit_code == 0);
    CHECK(file_run.output == flag_run.output);

    auto override_run = run_cli(std::string("cycle --config ") + tmp +
                                " --tau-dri 0.8 --variable discord --lo 0.01 --hi 0.2 --points 3");
    auto direct_run = run_cli("cycle --omega-h 3.8 --xi 2.0 --tau-dri 0.8 "
                              "--variable discord --lo 0.01 --hi 0.2 --points 3");
    REQUIRE(override_run.exit_code == 0);
    CHECK(override_run.output == direct_run.output);

    {
        std::ofstream f(tmp);
        f << "bogus_key = 1\n";
    }
    CHECK(run_cli(std::string("cycle --config ") + tmp).exit_code == 1);
    CHECK(run_cli("cycle --config /no/such/file").exit_code == 1);
    std::remove(tmp);
}

TEST_CASE("sample output is byte-identical for a fixed seed") {
    const std::string args = "sample --xi 4 --dim 48 --samples 50000 --seed 77";
    auto a = run_cli(args);
    auto b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);
    auto c = run_cli("sample --xi 4 --dim 48 --samples 50000 --seed 78");
    CHECK(a.output != c.output);
    // frequencies track probabilities
    auto rows = parse_csv(a.output);
    int pcol = column_index(rows[0], "prob");
    int fcol = column_index(rows[0], "frequency");
    double worst = 0.0;
    for (size_t i = 1; i < rows.size(); ++i)
        worst = std::max(worst, std::abs(std::stod(rows[i][pcol]) - std::stod(rows[i][fcol])));
    CHECK(worst < 0.01);
}

TEST_CASE("verify emits a deterministic report and fails on an undersized cutoff") {
    const std::string args = "verify --xi 4 --dim 48 --samples 20000 --seed 7";
    auto a = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.output.find("\"overall_pass\": true") != std::string::npos);
    auto b = run_cli(args);
    CHECK(a.output == b.output);

    auto bad = run_cli("verify --xi 4 --dim 8 --samples 1000 --seed 7");
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("steady_state_tail") != std::string::npos);
    CHECK(bad.output.find("\"overall_pass\": false") != std::string::npos);
}

TEST_CASE("golden figure tables match the pinned fixtures") {
    const char* dir = std::getenv("QOE_GOLDEN_DIR");
    REQUIRE(dir != nullptr);
    struct Fixture {
        const char* file;
        const char* args;
    };
    const Fixture fixtures[] = {
        {"correlations_fig1.csv", "correlations --beta 0.3 --omega 6 --lo 0 --hi 8 --points 81"},
        {"cycle_discord_hot.csv",
         "cycle --variable discord --lo 0.0001 --hi 0.6 --points 31"},
        {"cycle_tau_hot.csv",
         "cycle --omega-h 3.8 --xi 4.0878 --variable tau_dri --lo 0.4 --hi 6 --points 29"},
        {"cycle_discord_cold.csv",
         "cycle --variant cold-nonthermal --variable discord --lo 0.0001 --hi 0.9 --points 31"},
    };
    for (const auto& fx : fixtures) {
        CAPTURE(fx.file);
        std::ifstream f(std::string(dir) + "/" + fx.file);
        REQUIRE(f.good());
        std::stringstream want;
        want << f.rdbuf();
        auto got = run_cli(fx.args);
        REQUIRE(got.exit_code == 0);
        auto grows = parse_csv(got.output);
        auto wrows = parse_csv(want.str());
        REQUIRE(grows.size() == wrows.size());
        CHECK(grows[0] == wrows[0]);
        for (size_t i = 1; i < grows.size(); ++i) {
            REQUIRE(grows[i].size() == wrows[i].size());
            for (size_t j = 0; j < grows[i].size(); ++j) {
                const std::string& gv = grows[i][j];
                const std::string& wv = wrows[i][j];
                char* end = nullptr;
                double wd = std::strtod(wv.c_str(), &end);
                if (end == wv.c_str() + wv.size() && wv != "nan") {
                    double gd = std::stod(gv);
                    CHECK(std::abs(gd - wd) <=
                          1e-9 * std::max({std::abs(gd), std::abs(wd), 1e-30}));
                } else {
                    CHECK(gv == wv);  // mode labels and nan cells compare textually
                }
            }
        }
    }
}
