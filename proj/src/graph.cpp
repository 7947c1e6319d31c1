#include "nfprop/graph.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace nfprop {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Graph Graph::from_arcs(std::size_t n, std::span<const std::pair<NodeId, NodeId>> arcs,
                       bool directed, std::vector<Label> labels) {
  if (n > std::numeric_limits<NodeId>::max()) throw std::length_error("too many nodes");
  if (labels.empty()) {
    labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = i;
  }
  if (labels.size() != n) throw std::invalid_argument("label table size differs from node count");

  std::vector<std::uint64_t> degree(n + 1, 0);
  auto count = [&](NodeId u, NodeId v) {
    if (u >= n || v >= n) throw std::out_of_range("arc endpoint out of range");
    if (u != v) ++degree[u + 1];
  };
  for (auto [u, v] : arcs) {
    count(u, v);
    if (!directed) count(v, u);
  }
  for (std::size_t i = 0; i < n; ++i) degree[i + 1] += degree[i];

  std::vector<NodeId> raw(degree[n]);
  std::vector<std::uint64_t> cursor(degree.begin(), degree.end() - 1);
  for (auto [u, v] : arcs) {
    if (u == v) continue;
    raw[cursor[u]++] = v;
    if (!directed) raw[cursor[v]++] = u;
  }

  Graph g;
  g.directed_ = directed;
  g.labels_ = std::move(labels);
  g.offsets_.assign(n + 1, 0);
  g.targets_.reserve(raw.size());
  for (std::size_t u = 0; u < n; ++u) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(degree[u]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(degree[u + 1]);
    std::sort(first, last);
    auto end = std::unique(first, last);
    g.targets_.insert(g.targets_.end(), first, end);
    g.offsets_[u + 1] = g.targets_.size();
  }
  return g;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string read_gzip(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) throw std::runtime_error("cannot open " + path);
  std::string data;
  char buf[1 << 16];
  int got = 0;
  while ((got = gzread(f, buf, sizeof buf)) > 0) data.append(buf, static_cast<std::size_t>(got));
  int err = 0;
  const char* msg = gzerror(f, &err);
  gzclose(f);
  if (got < 0 || (err != Z_OK && err != Z_STREAM_END))
    throw std::runtime_error("gzip read failed for " + path + ": " + msg);
  return data;
}

}  // namespace

Graph load_edge_list(std::istream& in, bool directed, char comment_prefix, std::size_t min_nodes) {
  std::unordered_map<Label, NodeId> ids;
  std::vector<Label> labels;
  std::vector<std::pair<NodeId, NodeId>> arcs;

  auto intern = [&](Label l) {
    auto [it, inserted] = ids.try_emplace(l, static_cast<NodeId>(labels.size()));
    if (inserted) {
      if (labels.size() >= std::numeric_limits<NodeId>::max())
        throw std::length_error("too many nodes");
      labels.push_back(l);
    }
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < line.size() && is_space(line[pos])) ++pos;
    };
    skip_ws();
    if (pos == line.size() || line[pos] == comment_prefix) continue;

    Label tok[2];
    int count = 0;
    while (pos < line.size()) {
      std::size_t start = pos;
      while (pos < line.size() && !is_space(line[pos])) ++pos;
      if (count == 2) throw ParseError(lineno, "expected exactly two tokens");
      auto [ptr, ec] = std::from_chars(line.data() + start, line.data() + pos, tok[count]);
      if (ec != std::errc{} || ptr != line.data() + pos)
        throw ParseError(lineno, "not a non-negative integer: '" + line.substr(start, pos - start) + "'");
      ++count;
      skip_ws();
    }
    if (count != 2) throw ParseError(lineno, "expected exactly two tokens");
    NodeId u = intern(tok[0]);
    NodeId v = intern(tok[1]);
    arcs.emplace_back(u, v);
  }
  if (in.bad()) throw std::runtime_error("read error");

  if (min_nodes > labels.size()) {
    Label next = 0;
    for (Label l : labels) next = std::max(next, l + 1);
    while (labels.size() < min_nodes) labels.push_back(next++);
  }
  std::size_t n = labels.size();
  return Graph::from_arcs(n, arcs, directed, std::move(labels));
}

Graph load_edge_list(const EdgeListSource& src, bool directed, std::size_t min_nodes) {
  if (src.path.size() >= 3 && src.path.ends_with(".gz")) {
    std::istringstream in(read_gzip(src.path));
    return load_edge_list(in, directed, src.comment_prefix, min_nodes);
  }
  std::ifstream in(src.path);
  if (!in) throw std::runtime_error("cannot open " + src.path);
  return load_edge_list(in, directed, src.comment_prefix, min_nodes);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (!g.directed() && v < u) continue;
      out << g.label(u) << ' ' << g.label(v) << '\n';
    }
  }
}

Graph transpose(const Graph& g) {
  std::vector<std::pair<NodeId, NodeId>> arcs;
  arcs.reserve(g.num_arcs());
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    for (NodeId v : g.neighbors(u)) arcs.emplace_back(v, u);
  Graph t = Graph::from_arcs(g.num_nodes(), arcs, true, {g.labels().begin(), g.labels().end()});
  t.directed_ = g.directed();
  return t;
}

std::size_t out_degree(const Graph& g, NodeId u) {
  if (u >= g.num_nodes()) throw std::out_of_range("node id out of range");
  return g.offsets()[u + 1] - g.offsets()[u];
}

}  // namespace nfprop
