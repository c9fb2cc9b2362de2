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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <chrono>

#include "fairnet/instance_io.hpp"
#include "fairnet/reductions.hpp"
#include "fairnet/solvers.hpp"

namespace py = pybind11;
using namespace fairnet;

namespace {

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Edge> e;
  e.reserve(edges.size());
  for (auto [u, v] : edges) e.emplace_back(std::min(u, v), std::max(u, v));
  return Graph::from_edges(n, e);
}

py::dict outcome_dict(Algorithm algo, const SolveOutcome& out) {
  py::dict d;
  d["algorithm"] = to_string(algo);
  d["verdict"] = to_string(out.verdict);
  d["k"] = out.certificate ? py::cast(out.certificate->constant) : py::none();
  d["labeling"] = out.certificate ? py::cast(out.certificate->labeling) : py::none();
  d["reason"] = out.refusal_reason;
  d["nodes"] = out.stats.nodes;
  d["ilp_calls"] = out.stats.ilp_calls;
  d["trace"] = out.stats.trace;
  return d;
}

py::dict instance_dict(const Instance& inst) {
  py::dict d;
  d["n"] = inst.graph.vertex_count();
  d["edges"] = inst.graph.edges();
  d["labels"] = std::vector<Label>(inst.labels.values().begin(), inst.labels.values().end());
  d["k"] = inst.k ? py::cast(*inst.k) : py::none();
  d["metadata"] = inst.metadata;
  d["certificate"] = inst.certificate ? py::cast(inst.certificate->labeling) : py::none();
  d["text"] = write_instance(inst);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fair labeling solvers, certificates and instance generators";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  m.def(
      "solve",
      [](int n, const std::vector<std::pair<int, int>>& edges, const std::vector<Label>& labels,
         const std::string& algorithm, std::optional<Label> k, std::optional<double> timeout) {
        const auto algo = parse_algorithm(algorithm);
        if (!algo) throw InputError("unknown algorithm '" + algorithm + "'");
        const Graph g = make_graph(n, edges);
        const LabelMultiset s(labels);
        SolveOptions opts;
        opts.fixed_k = k;
        if (timeout) opts.deadline = Deadline::after(std::chrono::duration<double>(*timeout));
        SolveOutcome out;
        {
          py::gil_scoped_release release;
          out = solve(*algo, g, s, opts);
        }
        return outcome_dict(*algo, out);
      },
      py::arg("n"), py::arg("edges"), py::arg("labels"), py::arg("algorithm") = "auto", py::arg("k") = py::none(),
      py::arg("timeout") = py::none());

  m.def(
      "verify",
      [](int n, const std::vector<std::pair<int, int>>& edges, const std::vector<Label>& labels,
         const std::vector<Label>& labeling) { return verify(make_graph(n, edges), LabelMultiset(labels), labeling); },
      py::arg("n"), py::arg("edges"), py::arg("labels"), py::arg("labeling"));

  m.def(
      "parameters",
      [](int n, const std::vector<std::pair<int, int>>& edges, const std::vector<Label>& labels) {
        const auto p = parameter_report(make_graph(n, edges), LabelMultiset(labels));
        py::dict d;
        d["n"] = p.vertices;
        d["max_degree"] = p.max_degree;
        d["alpha"] = p.alpha;
        d["fvs"] = p.fvs;
        d["vc"] = p.vc;
        d["regular_degree"] = p.regular_degree;
        return d;
      },
      py::arg("n"), py::arg("edges"), py::arg("labels"));

  m.def("read_instance", [](const std::string& text) { return instance_dict(read_instance(text)); }, py::arg("text"));
  m.def("load_instance", [](const std::string& path) { return instance_dict(load_instance(path)); }, py::arg("path"));

  m.def(
      "gen_semimagic", [](int n, const std::vector<Label>& entries) { return instance_dict(gen_semimagic({n, entries})); },
      py::arg("n"), py::arg("entries"));
  m.def(
      "gen_3partition",
      [](const std::vector<Label>& w, int m_, const std::string& kind) {
        const ThreePartitionInstance tp{w, m_};
        if (kind == "k33") return instance_dict(gen_3partition_k33(tp));
        if (kind == "stars") return instance_dict(gen_3partition_stars(tp));
        throw InputError("kind must be 'k33' or 'stars'");
      },
      py::arg("w"), py::arg("m"), py::arg("kind") = "k33");
  m.def(
      "gen_circulant", [](int n, int r) { return gen_circulant(n, r).edges(); }, py::arg("n"), py::arg("r"));
  m.def(
      "random_instance",
      [](const std::string& shape, int n, int max_label, std::uint64_t seed) {
        const auto sh = parse_random_shape(shape);
        if (!sh) throw InputError("unknown shape '" + shape + "'");
        return instance_dict(random_instance(*sh, n, max_label, seed));
      },
      py::arg("shape"), py::arg("n"), py::arg("max_label"), py::arg("seed") = 0);
}
