#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "mdepth/cli.hpp"
#include "mdepth/decomposition.hpp"
#include "mdepth/matroid_io.hpp"

using namespace mdepth;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::vector<const char*> argv{"mdepth"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    std::filesystem::path path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << text;
    return path;
}

}  // namespace

TEST_CASE("cli rank") {
    auto file = write_temp("cli_u32.matroid", "matroid uniform\nn 3\nr 2\n");
    CliResult r = run({"rank", file.string(), "--set", "0,2"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "2\n");
    CHECK(run({"rank", file.string()}).out == "2\n");
}

TEST_CASE("cli depth kinds") {
    auto loops = write_temp("cli_loops.matroid", "matroid uniform\nn 3\nr 0\n");
    CliResult r = run({"depth", loops.string(), "--kind", "cd"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.substr(0, 2) == "1\n");
    CHECK(run({"depth", loops.string(), "--kind", "dd-alt"}).out.substr(0, 2) == "1\n");
    CHECK(run({"depth", loops.string(), "--kind", "cd-alt"}).out.substr(0, 2) == "0\n");
    CHECK(run({"depth", loops.string(), "--kind", "bogus"}).exit_code == 2);
}

TEST_CASE("cli csd prints the value and search statistics") {
    auto file = write_temp("cli_u31.matroid", "matroid uniform\nn 3\nr 1\n");
    CliResult r = run({"csd", file.string()});
    CHECK(r.exit_code == 0);
    CHECK(r.out.substr(0, 2) == "1\n");
    CHECK(r.out.find("trees examined") != std::string::npos);
}

TEST_CASE("cli decompose writes dot that round-trips") {
    auto file = write_temp("cli_u32b.matroid", "matroid uniform\nn 3\nr 2\n");
    auto dot_path = std::filesystem::temp_directory_path() / "cli_u32.dot";
    CliResult r = run({"decompose", file.string(), "--dot", dot_path.string()});
    CHECK(r.exit_code == 0);
    std::ifstream in(dot_path);
    std::stringstream dot;
    dot << in.rdbuf();
    StarDecomposition d = decomposition_from_dot(dot.str());
    CHECK(d.tree.edge_count() == 2);
    CHECK(is_valid(Matroid::uniform(3, 2), d));
}

TEST_CASE("cli extend emits a replayable explicit matroid") {
    auto file = write_temp("cli_u32c.matroid", "matroid uniform\nn 3\nr 2\n");
    auto out_path = std::filesystem::temp_directory_path() / "cli_u32.ext";
    CliResult r = run({"extend", file.string(), "--out", out_path.string()});
    CHECK(r.exit_code == 0);
    Matroid replayed = read_matroid_file(out_path.string());
    CHECK(replayed.size() == 5);
    CHECK(replayed.rank() == 2);
    for (std::uint64_t mask = 0; mask < 8; ++mask)
        CHECK(replayed.rank_mask(mask) == Matroid::uniform(3, 2).rank_mask(mask));
    std::ifstream in(out_path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str().find("edge-element map") != std::string::npos);
}

TEST_CASE("cli tamed ledger") {
    auto file = write_temp("cli_u32d.matroid", "matroid uniform\nn 3\nr 2\n");
    CliResult all_edges = run({"tamed", file.string(), "--set", "E(T)"});
    CHECK(all_edges.exit_code == 0);
    CHECK(all_edges.out.find("root surplus: 0") != std::string::npos);
    CHECK(all_edges.out.find("tamed\n") != std::string::npos);

    CliResult too_big = run({"tamed", file.string(), "--set", "0,1,3", "--trace"});
    CHECK(too_big.exit_code == 0);
    CHECK(too_big.out.find("not tamed") != std::string::npos);

    CHECK(run({"tamed", file.string(), "--set", "9"}).exit_code == 2);
}

TEST_CASE("cli output is deterministic") {
    auto file = write_temp("cli_det.matroid", "matroid gf2\nrows 2\ncol 10\ncol 01\ncol 11\n");
    CliResult a = run({"csd", file.string()});
    CliResult b = run({"csd", file.string()});
    CHECK(a.out == b.out);
    CliResult c = run({"tamed", file.string(), "--set", "E(T)"});
    CliResult d = run({"tamed", file.string(), "--set", "E(T)"});
    CHECK(c.out == d.out);
}

TEST_CASE("cli error codes") {
    CHECK(run({"rank", "/nonexistent.matroid"}).exit_code == 2);
    auto bad = write_temp("cli_bad.matroid", "matroid uniform\nn 3\nr 9\n");
    CHECK(run({"rank", bad.string()}).exit_code == 2);
    auto big = write_temp("cli_big.matroid", "matroid uniform\nn 8\nr 7\n");
    CliResult r = run({"csd", big.string()});
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("resource") != std::string::npos);
    CHECK(run({"nonsense"}).exit_code == 2);
}
