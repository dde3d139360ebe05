#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phylodist/enumerate.hpp"
#include "phylodist/error.hpp"
#include "phylodist/fixtures.hpp"
#include "phylodist/io.hpp"
#include "phylodist/iso.hpp"
#include "phylodist/matrix.hpp"
#include "phylodist/recon_l1.hpp"
#include "phylodist/recon_l2.hpp"

namespace fs = std::filesystem;

namespace {

int exit_code_for(const phylo::Error& e) {
  switch (e.stage()) {
    case phylo::Stage::parse:
    case phylo::Stage::validate:
      return 2;
    case phylo::Stage::internal:
      return 4;
    case phylo::Stage::none:
      break;
    default:
      return 3;
  }
  switch (e.code()) {
    case phylo::Code::ParseError:
      return 2;
    case phylo::Code::Internal:
      return 4;
    default:
      return 3;
  }
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    phylo::write_file(out_path, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distance matrices and reconstruction for unrooted binary phylogenetic networks"};
  app.require_subcommand(1);

  std::string net_path, kind = "multiset", out_path;
  auto* dist = app.add_subcommand("dist", "compute a distance matrix of a network");
  dist->add_option("--net", net_path, "network file")->required();
  dist->add_option("--kind", kind, "multiset|shortest")
      ->check(CLI::IsMember({"multiset", "shortest"}));
  dist->add_option("--out", out_path, "output file (default stdout)");

  std::string matrix_path, mode = "l2-multiset";
  auto* rec = app.add_subcommand("reconstruct", "reconstruct a network from a distance matrix");
  rec->add_option("--matrix", matrix_path, "matrix file")->required();
  rec->add_option("--mode", mode, "l1-shortest|l2-multiset|l2-small-shortest")
      ->check(CLI::IsMember({"l1-shortest", "l2-multiset", "l2-small-shortest"}));
  rec->add_option("--out", out_path, "output file (default stdout)");

  std::string a_path, b_path;
  auto* iso = app.add_subcommand("check-iso", "test label-preserving isomorphism");
  iso->add_option("--a", a_path, "first network file")->required();
  iso->add_option("--b", b_path, "second network file")->required();

  std::string leaves_csv, out_dir;
  int max_edges = 20, max_level = 2;
  auto* en = app.add_subcommand("enumerate", "enumerate networks up to isomorphism");
  en->add_option("--leaves", leaves_csv, "comma-separated labels")->required();
  en->add_option("--max-edges", max_edges, "edge budget");
  en->add_option("--max-level", max_level, "level bound");
  en->add_option("--out", out_dir, "output directory")->required();

  std::string in_dir;
  auto* col = app.add_subcommand("collide", "scan a directory of networks for matrix collisions");
  col->add_option("--in", in_dir, "directory of .net files")->required();
  col->add_option("--kind", kind, "multiset|shortest")
      ->check(CLI::IsMember({"multiset", "shortest"}));
  col->add_option("--out", out_path, "output file (default stdout)");

  std::string fixture_name;
  auto* fix = app.add_subcommand("fixtures", "write a reference network");
  fix->add_option("--name", fixture_name, "fixture name")->required();
  fix->add_option("--out", out_path, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints usage/help
    return code == 0 ? 0 : 1;
  }

  try {
    if (dist->parsed()) {
      const phylo::Network net = phylo::parse_network(phylo::read_file(net_path));
      if (kind == "multiset") {
        emit(out_path, phylo::serialize_matrix(phylo::multiset_matrix(net)));
      } else {
        emit(out_path, phylo::serialize_matrix(phylo::shortest_matrix(net)));
      }
      return 0;
    }
    if (rec->parsed()) {
      phylo::Network net = [&] {
        const std::string text = phylo::read_file(matrix_path);
        if (mode == "l1-shortest") return phylo::reconstruct_l1(phylo::parse_shortest_matrix(text));
        if (mode == "l2-small-shortest")
          return phylo::reconstruct_l2_small_shortest(phylo::parse_shortest_matrix(text));
        return phylo::reconstruct_l2(phylo::parse_multiset_matrix(text));
      }();
      emit(out_path, phylo::serialize_network(net));
      return 0;
    }
    if (iso->parsed()) {
      const phylo::Network a = phylo::parse_network(phylo::read_file(a_path));
      const phylo::Network b = phylo::parse_network(phylo::read_file(b_path));
      if (phylo::is_isomorphic(a, b)) {
        std::cout << "isomorphic\n";
        return 0;
      }
      std::cout << "distinct\n";
      return 3;
    }
    if (en->parsed()) {
      phylo::EnumSpec spec;
      std::string cur;
      for (char c : leaves_csv + ",") {
        if (c == ',') {
          if (!cur.empty()) spec.labels.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      spec.max_edges = max_edges;
      spec.max_level = max_level;
      const auto nets = phylo::enumerate_networks(spec);
      fs::create_directories(out_dir);
      int idx = 0;
      for (const auto& n : nets) {
        char name[32];
        std::snprintf(name, sizeof(name), "net_%05d.net", idx++);
        phylo::write_file((fs::path(out_dir) / name).string(), phylo::serialize_network(n));
      }
      std::cout << "enumerated " << nets.size() << " networks\n";
      return 0;
    }
    if (col->parsed()) {
      std::vector<std::string> files;
      for (const auto& entry : fs::directory_iterator(in_dir))
        if (entry.path().extension() == ".net") files.push_back(entry.path().string());
      std::sort(files.begin(), files.end());
      std::vector<phylo::Network> nets;
      for (const auto& f : files) nets.push_back(phylo::parse_network(phylo::read_file(f)));
      const auto report = phylo::collision_scan(
          nets, kind == "multiset" ? phylo::MatrixKind::multiset : phylo::MatrixKind::shortest);
      std::string out = "collisions: " + std::to_string(report.groups.size()) + "\n";
      int gi = 1;
      for (const auto& g : report.groups) {
        out += "group " + std::to_string(gi++) + ":";
        for (int idx : g.members) out += " " + fs::path(files[idx]).filename().string();
        out += "\n";
      }
      emit(out_path, out);
      return 0;
    }
    if (fix->parsed()) {
      if (fixture_name == "fig2_pair" || fixture_name == "fig3_pair") {
        const auto [left, right] = phylo::fixture_pair(fixture_name);
        phylo::write_file(out_path + ".left", phylo::serialize_network(left));
        phylo::write_file(out_path + ".right", phylo::serialize_network(right));
        std::cout << "wrote " << out_path << ".left and " << out_path << ".right\n";
      } else {
        phylo::write_file(out_path, phylo::serialize_network(phylo::fixture(fixture_name)));
        std::cout << "wrote " << out_path << "\n";
      }
      return 0;
    }
  } catch (const phylo::Error& e) {
    std::cerr << "error: " << e.diagnostic() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 1;
}
