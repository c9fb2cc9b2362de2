// Copyright 2026 The fairnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fairnet/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace fairnet {

namespace {

constexpr std::int64_t kMaxVertices = 10'000'000;

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Instance read_instance(std::string_view text) {
  int line_no = 0;
  auto fail = [&](const std::string& what) -> void { throw ParseError(line_no, what); };
  auto integer = [&](std::string_view tok, const char* field) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      fail(std::string("bad integer '") + std::string(tok) + "' in " + field);
    }
    return v;
  };

  bool header = false;
  std::optional<std::int64_t> n;
  std::vector<Edge> edges;
  std::set<Edge> seen_edges;
  std::map<Label, std::size_t> label_counts;
  Instance inst;
  std::optional<Labeling> cert;
  std::optional<Label> cert_k;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto tok = split(line);
    const std::string_view kind = tok[0];
    if (!header) {
      if (tok.size() != 2 || kind != "fairnet" || tok[1] != "v1") fail("expected header 'fairnet v1'");
      header = true;
      continue;
    }
    if (kind == "vertices") {
      if (n) fail("duplicate 'vertices' line");
      if (tok.size() != 2) fail("expected 'vertices N'");
      const auto v = integer(tok[1], "vertices");
      if (v < 0 || v > kMaxVertices) fail("vertices out of range");
      n = v;
      continue;
    }
    if (kind != "meta" && !n) fail("'vertices' must come before '" + std::string(kind) + "'");
    if (kind == "edge") {
      if (tok.size() != 3) fail("expected 'edge u v'");
      auto u = integer(tok[1], "edge"), v = integer(tok[2], "edge");
      if (u < 0 || v < 0 || u >= *n || v >= *n) fail("edge endpoint out of range");
      if (u == v) fail("self-loop on vertex " + std::to_string(u));
      Edge e{static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))};
      if (!seen_edges.insert(e).second) fail("duplicate edge " + std::to_string(e.first) + " " + std::to_string(e.second));
      edges.push_back(e);
    } else if (kind == "label") {
      if (tok.size() != 3) fail("expected 'label value count'");
      const auto value = integer(tok[1], "label");
      const auto count = integer(tok[2], "label");
      if (value <= 0) fail("label values must be positive");
      if (count <= 0) fail("label counts must be positive");
      if (label_counts.count(value)) fail("duplicate label value " + std::to_string(value));
      label_counts[value] = static_cast<std::size_t>(count);
    } else if (kind == "k") {
      if (tok.size() != 2 || inst.k) fail("expected a single 'k value'");
      inst.k = integer(tok[1], "k");
      if (*inst.k <= 0) fail("k must be positive");
    } else if (kind == "meta") {
      if (tok.size() < 3) fail("expected 'meta key value'");
      const std::string key(tok[1]);
      if (inst.metadata.count(key)) fail("duplicate meta key '" + key + "'");
      const std::size_t at = static_cast<std::size_t>(tok[1].data() - line.data()) + tok[1].size();
      inst.metadata[key] = std::string(trim(line.substr(at)));
    } else if (kind == "cert") {
      if (cert) fail("duplicate 'cert' line");
      if (static_cast<std::int64_t>(tok.size()) - 1 != *n) fail("cert must list one label per vertex");
      Labeling l;
      for (std::size_t i = 1; i < tok.size(); ++i) l.push_back(integer(tok[i], "cert"));
      cert = std::move(l);
    } else if (kind == "cert_k") {
      if (tok.size() != 2 || cert_k) fail("expected a single 'cert_k value'");
      cert_k = integer(tok[1], "cert_k");
    } else {
      fail("unknown directive '" + std::string(kind) + "'");
    }
  }
  ++line_no;
  if (!header) fail("missing header 'fairnet v1'");
  if (!n) fail("missing 'vertices' line");

  std::size_t total = 0;
  std::vector<std::pair<Label, std::size_t>> counts(label_counts.begin(), label_counts.end());
  for (auto [v, c] : counts) total += c;
  if (total != static_cast<std::size_t>(*n)) {
    throw InputError("labels: multiset has " + std::to_string(total) + " labels for " + std::to_string(*n) +
                     " vertices");
  }
  inst.graph = Graph::from_edges(static_cast<int>(*n), edges);
  inst.labels = LabelMultiset::from_counts(counts);
  if (cert_k && !cert) throw InputError("cert_k: given without a certificate");
  if (cert) {
    const auto got = verify(inst.graph, inst.labels, *cert);
    inst.certificate = FairnessCertificate{std::move(*cert), cert_k ? *cert_k : got.value_or(kVacuousConstant)};
    inst.certificate_verified = got && *got == inst.certificate->constant;
  }
  return inst;
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << "fairnet v1\n";
  out << "vertices " << inst.graph.vertex_count() << '\n';
  for (auto [u, v] : inst.graph.edges()) out << "edge " << u << ' ' << v << '\n';
  for (auto [value, count] : inst.labels.counts()) out << "label " << value << ' ' << count << '\n';
  if (inst.k) out << "k " << *inst.k << '\n';
  for (const auto& [key, value] : inst.metadata) out << "meta " << key << ' ' << value << '\n';
  if (inst.certificate) {
    out << "cert";
    for (Label l : inst.certificate->labeling) out << ' ' << l;
    out << "\ncert_k " << inst.certificate->constant << '\n';
  }
  return out.str();
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_instance(buf.str());
}

void save_instance(const std::string& path, const Instance& instance) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << write_instance(instance);
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace fairnet
