#include "phylodist/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "phylodist/error.hpp"

namespace phylo {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> nonempty_lines(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& raw : split(text, '\n')) {
    auto line = strip(raw);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string> parse_leaves_line(const std::string& line) {
  if (line.rfind("leaves:", 0) != 0)
    throw Error(Code::ParseError, "expected 'leaves:' line, got: " + line, Stage::parse);
  std::vector<std::string> labels;
  for (auto& tok : split(strip(line.substr(7)), ',')) {
    auto t = strip(tok);
    if (!valid_label(t)) throw Error(Code::ParseError, "bad leaf label '" + t + "'", Stage::parse);
    if (reserved_label(t))
      throw Error(Code::ParseError, "label '" + t + "' uses the reserved _z namespace",
                  Stage::parse);
    labels.push_back(t);
  }
  if (!std::is_sorted(labels.begin(), labels.end()))
    throw Error(Code::ParseError, "leaves line must be sorted", Stage::parse);
  return labels;
}

// Shortlex on name tokens so v2 sorts before v10.
bool shortlex_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

Network parse_network(const std::string& text) {
  auto lines = nonempty_lines(text);
  if (lines.empty()) throw Error(Code::ParseError, "empty network file", Stage::parse);
  RawGraph g;
  g.leaves = parse_leaves_line(lines.front());
  for (size_t i = 1; i < lines.size(); ++i) {
    std::istringstream ss(lines[i]);
    std::string u, v, extra;
    if (!(ss >> u >> v) || (ss >> extra))
      throw Error(Code::ParseError, "bad edge line: " + lines[i], Stage::parse);
    if (reserved_label(u) || reserved_label(v))
      throw Error(Code::ParseError, "vertex token in reserved _z namespace", Stage::parse);
    g.edges.emplace_back(u, v);
  }
  return Network::validate(g);
}

std::string serialize_network(const Network& n) {
  std::string out = "leaves: ";
  for (size_t i = 0; i < n.labels().size(); ++i) {
    if (i) out += ',';
    out += n.labels()[i];
  }
  out += '\n';
  if (n.is_singleton()) return out;

  // Deterministic BFS naming for internal vertices: start from the smallest
  // leaf, expand neighbours leaves-first (by label), internals by their leaf
  // distance signature, tying on discovery id.
  const int nv = n.vertex_count();
  std::vector<std::vector<int>> sig(nv, std::vector<int>(n.labels().size(), 0));
  {
    int li = 0;
    for (const auto& lab : n.labels()) {
      std::vector<int> dist(nv, -1);
      std::vector<int> queue{n.leaf(lab)};
      dist[queue[0]] = 0;
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        for (int v : n.neighbors(queue[qi]))
          if (dist[v] == -1) {
            dist[v] = dist[queue[qi]] + 1;
            queue.push_back(v);
          }
      }
      for (int v = 0; v < nv; ++v) sig[v][li] = dist[v];
      ++li;
    }
  }
  std::vector<std::string> name(nv);
  std::vector<char> seen(nv, 0);
  std::vector<int> queue{n.leaf(n.labels().front())};
  seen[queue[0]] = 1;
  int next_internal = 0;
  auto visit_name = [&](int v) {
    name[v] = n.is_leaf(v) ? n.label(v) : "v" + std::to_string(next_internal++);
  };
  visit_name(queue[0]);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const int u = queue[qi];
    std::vector<int> nbs;
    for (int v : n.neighbors(u))
      if (!seen[v]) nbs.push_back(v);
    std::sort(nbs.begin(), nbs.end(), [&](int x, int y) {
      if (n.is_leaf(x) != n.is_leaf(y)) return n.is_leaf(x);
      if (n.is_leaf(x)) return n.label(x) < n.label(y);
      if (sig[x] != sig[y]) return sig[x] < sig[y];
      return x < y;
    });
    for (int v : nbs) {
      seen[v] = 1;
      visit_name(v);
      queue.push_back(v);
    }
  }
  std::vector<std::pair<std::string, std::string>> lines;
  for (auto [u, v] : n.edges()) {
    std::string a = name[u], b = name[v];
    if (shortlex_less(b, a)) std::swap(a, b);
    lines.emplace_back(a, b);
  }
  std::sort(lines.begin(), lines.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return shortlex_less(x.first, y.first);
    return shortlex_less(x.second, y.second);
  });
  for (const auto& [a, b] : lines) out += a + " " + b + "\n";
  return out;
}

namespace {

struct ParsedMatrixLines {
  std::vector<std::string> labels;
  std::vector<std::pair<std::pair<std::string, std::string>, std::string>> cells;
};

ParsedMatrixLines parse_matrix_lines(const std::string& text) {
  auto lines = nonempty_lines(text);
  if (lines.empty()) throw Error(Code::ParseError, "empty matrix file", Stage::parse);
  ParsedMatrixLines out;
  size_t start = 0;
  if (lines.front().rfind("leaves:", 0) == 0) {
    out.labels = parse_leaves_line(lines.front());
    start = 1;
  }
  std::set<std::string> labelset(out.labels.begin(), out.labels.end());
  for (size_t i = start; i < lines.size(); ++i) {
    auto colon = lines[i].find(':');
    if (colon == std::string::npos)
      throw Error(Code::ParseError, "bad matrix line: " + lines[i], Stage::parse);
    std::istringstream ss(lines[i].substr(0, colon));
    std::string x, y, extra;
    if (!(ss >> x >> y) || (ss >> extra))
      throw Error(Code::ParseError, "bad matrix pair: " + lines[i], Stage::parse);
    for (const auto& t : {x, y}) {
      if (!valid_label(t)) throw Error(Code::ParseError, "bad label '" + t + "'", Stage::parse);
      if (reserved_label(t))
        throw Error(Code::ParseError, "label '" + t + "' uses the reserved _z namespace",
                    Stage::parse);
      labelset.insert(t);
    }
    if (!(x < y)) throw Error(Code::ParseError, "pair not sorted: " + lines[i], Stage::parse);
    out.cells.push_back({{x, y}, strip(lines[i].substr(colon + 1))});
  }
  out.labels.assign(labelset.begin(), labelset.end());
  return out;
}

void check_complete(const ParsedMatrixLines& p) {
  const size_t n = p.labels.size();
  if (p.cells.size() != n * (n - 1) / 2)
    throw Error(Code::ParseError, "matrix has missing or duplicate pairs", Stage::parse);
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& [pair, _] : p.cells)
    if (!seen.insert(pair).second)
      throw Error(Code::ParseError, "duplicate pair " + pair.first + " " + pair.second,
                  Stage::parse);
}

}  // namespace

MultisetMatrix parse_multiset_matrix(const std::string& text) {
  auto p = parse_matrix_lines(text);
  check_complete(p);
  MultisetMatrix mm(p.labels);
  for (const auto& [pair, value] : p.cells) {
    DistanceMultiset ms;
    int last = -1;
    for (const auto& tok : split(value, ',')) {
      auto t = strip(tok);
      size_t pos = 0;
      int len;
      try {
        len = std::stoi(t, &pos);
      } catch (...) {
        throw Error(Code::ParseError, "bad length '" + t + "'", Stage::parse);
      }
      if (pos != t.size() || len < 0)
        throw Error(Code::ParseError, "bad length '" + t + "'", Stage::parse);
      if (len < last)
        throw Error(Code::ParseError, "lengths not ascending in cell " + pair.first + " " +
                                          pair.second,
                    Stage::parse);
      last = len;
      ms.add(len);
    }
    mm.set(pair.first, pair.second, std::move(ms));
  }
  return mm;
}

ShortestMatrix parse_shortest_matrix(const std::string& text) {
  auto p = parse_matrix_lines(text);
  check_complete(p);
  ShortestMatrix sm(p.labels);
  for (const auto& [pair, value] : p.cells) {
    size_t pos = 0;
    int d;
    try {
      d = std::stoi(value, &pos);
    } catch (...) {
      throw Error(Code::ParseError, "bad distance '" + value + "'", Stage::parse);
    }
    if (pos != value.size() || d <= 0)
      throw Error(Code::ParseError, "bad distance '" + value + "'", Stage::parse);
    sm.set(pair.first, pair.second, d);
  }
  // Triangle inequality sanity for file input.
  for (int i = 0; i < sm.n(); ++i)
    for (int j = 0; j < sm.n(); ++j)
      for (int k = 0; k < sm.n(); ++k) {
        if (i == j || j == k || i == k) continue;
        if (sm.at(i, j) + sm.at(j, k) < sm.at(i, k))
          throw Error(Code::ParseError, "triangle inequality violated",
                      Stage::parse, Cell{sm.labels()[i], sm.labels()[k]});
      }
  return sm;
}

namespace {

template <typename Matrix, typename CellFn>
std::string serialize_matrix_impl(const Matrix& m, CellFn cell) {
  if (m.n() == 1) return "leaves: " + m.labels().front() + "\n";
  std::string out;
  for (int i = 0; i < m.n(); ++i)
    for (int j = i + 1; j < m.n(); ++j)
      out += m.labels()[i] + " " + m.labels()[j] + " : " + cell(i, j) + "\n";
  return out;
}

}  // namespace

std::string serialize_matrix(const MultisetMatrix& mm) {
  return serialize_matrix_impl(mm, [&](int i, int j) { return mm.at(i, j).str(); });
}

std::string serialize_matrix(const ShortestMatrix& sm) {
  return serialize_matrix_impl(sm, [&](int i, int j) { return std::to_string(sm.at(i, j)); });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Code::ParseError, "cannot open " + path, Stage::parse);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Code::ParseError, "cannot write " + path, Stage::parse);
  out << content;
}

}  // namespace phylo
