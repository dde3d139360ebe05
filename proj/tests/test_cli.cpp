#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "phylodist/fixtures.hpp"
#include "phylodist/io.hpp"
#include "phylodist/matrix.hpp"

extern std::string g_cli_path;
extern std::string g_fixture_dir;

namespace fs = std::filesystem;
using namespace phylo;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string out_file = (fs::temp_directory_path() / "phylodist_cli_out.txt").string();
  const std::string cmd = g_cli_path + " " + args + " >" + out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::string out;
  {
    std::ifstream in(out_file);
    std::string line;
    while (std::getline(in, line)) out += line + "\n";
  }
  int code = -1;
  if (WIFEXITED(status)) code = WEXITSTATUS(status);
  return {code, out};
}

fs::path tmp_dir() {
  const fs::path dir = fs::temp_directory_path() / "phylodist_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("dist reproduces the fig1 table byte-for-byte") {
  REQUIRE(!g_cli_path.empty());
  const fs::path dir = tmp_dir();
  const std::string net = (dir / "fig1.net").string();
  write_file(net, serialize_network(fixture("fig1")));
  auto res = run("dist --net " + net + " --kind multiset");
  CHECK(res.exit_code == 0);
  CHECK(res.out == serialize_matrix(multiset_matrix(fixture("fig1"))));
  auto res2 = run("dist --net " + net + " --kind shortest");
  CHECK(res2.exit_code == 0);
  CHECK(res2.out == serialize_matrix(shortest_matrix(fixture("fig1"))));
}

TEST_CASE("reconstruct l2-multiset then check-iso round-trips fig1") {
  const fs::path dir = tmp_dir();
  const std::string net = (dir / "fig1.net").string();
  const std::string mdist = (dir / "fig1.mdist").string();
  const std::string rebuilt = (dir / "fig1_rebuilt.net").string();
  write_file(net, serialize_network(fixture("fig1")));
  write_file(mdist, serialize_matrix(multiset_matrix(fixture("fig1"))));
  CHECK(run("reconstruct --matrix " + mdist + " --mode l2-multiset --out " + rebuilt).exit_code ==
        0);
  CHECK(run("check-iso --a " + net + " --b " + rebuilt).exit_code == 0);
}

TEST_CASE("reconstruct refuses the fig3 multisets with exit 3 and a stage tag") {
  const fs::path dir = tmp_dir();
  const std::string mdist = (dir / "fig3.mdist").string();
  write_file(mdist, serialize_matrix(multiset_matrix(fixture("fig3_left"))));
  auto res = run("reconstruct --matrix " + mdist + " --mode l2-multiset");
  CHECK(res.exit_code == 3);
  CHECK(res.out.find("stage=small_base") != std::string::npos);
  CHECK(res.out.find("NotRealizableLevel2") != std::string::npos);
}

TEST_CASE("reconstruct modes l1-shortest and l2-small-shortest") {
  const fs::path dir = tmp_dir();
  const std::string sdist = (dir / "tri.sdist").string();
  write_file(sdist, "a b : 3\na c : 3\nb c : 3\n");
  CHECK(run("reconstruct --matrix " + sdist + " --mode l1-shortest").exit_code == 0);
  const std::string sdist2 = (dir / "pair.sdist").string();
  write_file(sdist2, "x y : 7\n");
  CHECK(run("reconstruct --matrix " + sdist2 + " --mode l2-small-shortest").exit_code == 0);
  write_file(sdist2, "x y : 8\n");
  CHECK(run("reconstruct --matrix " + sdist2 + " --mode l2-small-shortest").exit_code == 3);
}

TEST_CASE("check-iso distinguishes the fig2 pair") {
  const fs::path dir = tmp_dir();
  const std::string l = (dir / "fig2l.net").string();
  const std::string r = (dir / "fig2r.net").string();
  write_file(l, serialize_network(fixture("fig2_left")));
  write_file(r, serialize_network(fixture("fig2_right")));
  auto res = run("check-iso --a " + l + " --b " + r);
  CHECK(res.exit_code == 3);
  CHECK(res.out == "distinct\n");
}

TEST_CASE("usage errors exit 1, parse errors exit 2") {
  CHECK(run("frobnicate").exit_code == 1);
  CHECK(run("dist").exit_code == 1);  // missing required --net
  const fs::path dir = tmp_dir();
  const std::string bad = (dir / "bad.net").string();
  write_file(bad, "leaves: x,y\nx\n");
  CHECK(run("dist --net " + bad + " --kind shortest").exit_code == 2);
  const std::string deg2 = (dir / "deg2.net").string();
  write_file(deg2, "leaves: x,y\nx m\nm y\n");
  CHECK(run("dist --net " + deg2 + " --kind shortest").exit_code == 2);
}

TEST_CASE("enumerate and collide work end to end") {
  const fs::path dir = tmp_dir() / "enum4";
  fs::remove_all(dir);
  auto res = run("enumerate --leaves a,b,c,d --max-edges 14 --max-level 2 --out " + dir.string());
  CHECK(res.exit_code == 0);
  size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".net") ++files;
  CHECK(files > 3);
  auto col = run("collide --in " + dir.string() + " --kind shortest");
  CHECK(col.exit_code == 0);
  CHECK(col.out.find("collisions:") == 0);
  CHECK(col.out.find("collisions: 0") != 0);  // the fig2 collision is in there
  auto col2 = run("collide --in " + dir.string() + " --kind multiset");
  CHECK(col2.exit_code == 0);
  CHECK(col2.out.find("collisions: 0") == 0);
}

TEST_CASE("fixtures subcommand writes networks") {
  const fs::path dir = tmp_dir();
  const std::string out = (dir / "fix_fig1.net").string();
  CHECK(run("fixtures --name fig1 --out " + out).exit_code == 0);
  CHECK(parse_network(read_file(out)).leaf_count() == 5);
  const std::string pair = (dir / "fix_fig2").string();
  CHECK(run("fixtures --name fig2_pair --out " + pair).exit_code == 0);
  CHECK(fs::exists(pair + ".left"));
  CHECK(fs::exists(pair + ".right"));
  CHECK(run("fixtures --name nope --out " + out).exit_code == 3);
}

TEST_CASE("shipped fixture files match the built-in fixtures") {
  REQUIRE(!g_fixture_dir.empty());
  for (const auto& name : fixture_names()) {
    const fs::path path = fs::path(g_fixture_dir) / (name + ".net");
    REQUIRE(fs::exists(path));
    CHECK(read_file(path.string()) == serialize_network(fixture(name)));
  }
}
