// tests/test_cli.cpp
//
// Exercises the installed CLI end to end. The binary path arrives via
// the OWGAME_BIN environment variable (set by ctest); tests are skipped
// when it is missing.

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

const char* cli_path() { return std::getenv("OWGAME_BIN"); }

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "owgame_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args, const fs::path& out) {
    const std::string cmd =
        std::string("\"") + cli_path() + "\" " + args + " --out \"" + out.string() + "\"";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

int run_nowrite(const std::string& args) {
    const std::string cmd =
        std::string("\"") + cli_path() + "\" " + args + " >/dev/null 2>/dev/null";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Splits a CSV document into metadata lines, header cells, and rows.
struct Csv {
    std::vector<std::string> meta;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            csv.meta.push_back(line);
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!have_header) {
            csv.header = cells;
            have_header = true;
        } else {
            csv.rows.push_back(cells);
        }
    }
    return csv;
}

int column_of(const Csv& csv, const std::string& name) {
    for (size_t j = 0; j < csv.header.size(); ++j)
        if (csv.header[j] == name) return static_cast<int>(j);
    return -1;
}

} // namespace

TEST_CASE("cli solve") {
    if (!cli_path()) { MESSAGE("OWGAME_BIN not set; skipping"); return; }
    const fs::path out = work_dir() / "solve.csv";
    const int rc = run("solve --n 2 --rho 1 --T 1 --N 4 --theta 0.1 --x 1,1", out);
    CHECK(rc == 0);
    const Csv csv = parse_csv(slurp(out));
    CHECK(csv.rows.size() == 5);
    const int vcol = column_of(csv, "v_k");
    REQUIRE(vcol >= 0);
    double vsum = 0.0;
    for (const auto& row : csv.rows) vsum += std::stod(row[static_cast<size_t>(vcol)]);
    CHECK(vsum == doctest::Approx(1.0).epsilon(1e-12));

    bool has_config = false;
    for (const std::string& m : csv.meta)
        if (m.find("theta=0.1") != std::string::npos) has_config = true;
    CHECK(has_config);
}

TEST_CASE("cli solve with cross-check metadata") {
    if (!cli_path()) { MESSAGE("OWGAME_BIN not set; skipping"); return; }
    const fs::path out = work_dir() / "solve_check.csv";
    const int rc =
        run("solve --n 3 --rho 1 --T 1 --N 32 --theta 0.2 --x 1,0,2 --method closed "
            "--method-check dense",
            out);
    CHECK(rc == 0);
    const Csv csv = parse_csv(slurp(out));
    double gap = -1.0;
    for (const std::string& m : csv.meta) {
        const auto pos = m.find("max_gap=");
        if (pos != std::string::npos) gap = std::stod(m.substr(pos + 8));
    }
    CHECK(gap >= 0.0);
    CHECK(gap <= 1e-9);
}

TEST_CASE("cli validation failures exit with code 2") {
    if (!cli_path()) { MESSAGE("OWGAME_BIN not set; skipping"); return; }
    CHECK(run_nowrite("solve --n 1 --rho 1 --T 1 --N 4 --theta 0 --x 1") == 2);
    CHECK(run_nowrite("limits --n 2 --rho 1 --T 1 --theta 0 --N-list 10 --x 1,1") == 2);
    CHECK(run_nowrite("oscillate --n 2 --rho 1 --T 1 --theta 0.5 --N-list 10 --x 1,1") == 2);
    CHECK(run_nowrite("costs --n 2 --rho 1 --T 1 --theta 0.1 --N-list 10 --c 1.5 --x 1,1") == 2);
}

TEST_CASE("cli limits") {
    if (!cli_path()) { MESSAGE("OWGAME_BIN not set; skipping"); return; }
    const fs::path out = work_dir() / "limits.csv";
    const int rc = run("limits --n 10 --theta 0.1 --rho 1 --T 1 --N-list 25,50 --t-grid 10", out);
    CHECK(rc == 0);
    const Csv csv = parse_csv(slurp(out));
    CHECK(csv.rows.size() == 2 * 11);
    const int tcol = column_of(csv, "t"), Vcol = column_of(csv, "V"), Wcol = column_of(csv, "W");
    REQUIRE(tcol >= 0);
    for (const auto& row : csv.rows)
        if (std::stod(row[static_cast<size_t>(tcol)]) == 0.0) {
            CHECK(row[static_cast<size_t>(Vcol)] == "1");
            CHECK(row[static_cast<size_t>(Wcol)] == "1");
        }
}

TEST_CASE("cli oscillate") {
    if (!cli_path()) { MESSAGE("OWGAME_BIN not set; skipping"); return; }
    const fs::path out = work_dir() / "osc.csv";
    const int rc = run("oscillate --n 10 --rho 1 --T 1 --theta 0 --N-list 100,101 --t-grid 10", out);
    CHECK(rc == 0);
    const Csv csv = parse_csv(slurp(out));
    CHECK(csv.rows.size() == 2 * 11);
    const int ccol = column_of(csv, "class");
    REQUIRE(ccol >= 0);
    bool saw_even = false, saw_odd = false;
    for (const auto& row : csv.rows) {
        const std::string& cls = row[static_cast<size_t>(ccol)];
        saw_even = saw_even || cls.rfind("even-", 0) == 0;
        saw_odd = saw_odd || cls.rfind("odd-", 0) == 0;
    }
    CHECK(saw_even);
    CHECK(saw_odd);
}

TEST_CASE("cli costs with zero inventories") {
    if (!cli_path()) { MESSAGE("OWGAME_BIN not set; skipping"); return; }
    const fs::path out = work_dir() / "costs.csv";
    const int rc = run("costs --n 2 --rho 1 --T 1 --theta 0.1 --x 0,0 --N-list 10 --c 0.5", out);
    CHECK(rc == 0);
    const Csv csv = parse_csv(slurp(out));
    for (const std::string col : {"total", "impact", "inst_front", "inst_back"}) {
        const int j = column_of(csv, col);
        REQUIRE(j >= 0);
        for (const auto& row : csv.rows) CHECK(std::stod(row[static_cast<size_t>(j)]) == 0.0);
    }
}

TEST_CASE("cli audit pass and corrupt control") {
    if (!cli_path()) { MESSAGE("OWGAME_BIN not set; skipping"); return; }
    const fs::path out = work_dir() / "audit.json";
    const int rc = run("audit --n 3 --rho 1 --T 1 --theta 0.1 --x 2,0,1 --N 50 --seed 42", out);
    CHECK(rc == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\"pass\": true") != std::string::npos);
    CHECK(text.find("\"schema_version\": 1") != std::string::npos);

    const fs::path out2 = work_dir() / "audit_bad.json";
    const int rc2 =
        run("audit --n 3 --rho 1 --T 1 --theta 0.1 --x 2,0,1 --N 50 --seed 42 --corrupt", out2);
    CHECK(rc2 == 4);
    CHECK(slurp(out2).find("\"pass\": false") != std::string::npos);
}

namespace {

// Walks the schema's "required" lists and confirms each named member is
// present in the instance (structural validation; no external validator).
void check_required(const nlohmann::json& schema, const nlohmann::json& instance) {
    if (schema.contains("required"))
        for (const auto& key : schema["required"]) {
            INFO("required key: ", key.get<std::string>());
            REQUIRE(instance.contains(key.get<std::string>()));
        }
    if (schema.contains("properties"))
        for (const auto& [key, sub] : schema["properties"].items())
            if (instance.contains(key) && sub.is_object()) check_required(sub, instance[key]);
}

} // namespace

TEST_CASE("cli audit report validates against the shipped schema") {
    if (!cli_path()) { MESSAGE("OWGAME_BIN not set; skipping"); return; }
    const fs::path out = work_dir() / "audit_schema.json";
    REQUIRE(run("audit --n 2 --rho 1 --T 1 --theta 0.2 --x 1,-1 --N 20", out) == 0);
    const nlohmann::json report = nlohmann::json::parse(slurp(out));
    const nlohmann::json schema = nlohmann::json::parse(
        slurp(fs::path(OWGAME_SOURCE_DIR) / "schemas" / "audit.schema.json"));
    check_required(schema, report);
    CHECK(report["schema_version"].get<int>() == 1);
}

TEST_CASE("cli json format") {
    if (!cli_path()) { MESSAGE("OWGAME_BIN not set; skipping"); return; }
    const fs::path out = work_dir() / "solve.json";
    const int rc = run("solve --n 2 --rho 1 --T 1 --N 4 --theta 0.1 --x 1,1 --format json", out);
    CHECK(rc == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\"schema_version\"") != std::string::npos);
    CHECK(text.find("\"columns\"") != std::string::npos);
    CHECK(text.find("\"rows\"") != std::string::npos);
}
