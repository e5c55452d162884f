/*
 *   Copyright 2026 The TREES Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <random>
#include <sstream>

#include "trees/apps.hpp"
#include "trees/error.hpp"

namespace trees::apps {

void GraphCSR::validate(bool weighted) const {
  if (row_offsets.empty() || row_offsets.front() != 0) {
    throw Error(ErrorCode::config, "graph: row offsets must start at 0");
  }
  if (!std::is_sorted(row_offsets.begin(), row_offsets.end())) {
    throw Error(ErrorCode::config, "graph: row offsets must be non-decreasing");
  }
  if (row_offsets.back() != edge_count()) {
    throw Error(ErrorCode::config, "graph: last row offset must equal the edge count");
  }
  const Word v = vertex_count();
  for (Word c : columns) {
    if (c < 0 || c >= v) {
      throw Error(ErrorCode::config, "graph: edge target " + std::to_string(c) + " out of range");
    }
  }
  if (weighted) {
    if (weights.size() != columns.size()) {
      throw Error(ErrorCode::config, "graph: one weight per edge is required");
    }
    if (std::any_of(weights.begin(), weights.end(), [](Word w) { return w < 0; })) {
      throw Error(ErrorCode::config, "graph: weights must be non-negative");
    }
  }
}

GraphCSR make_csr(Word vertices, std::span<const Edge> edges, bool weighted) {
  if (vertices < 0) {
    throw Error(ErrorCode::config, "graph: negative vertex count");
  }
  GraphCSR g;
  g.row_offsets.assign(static_cast<std::size_t>(vertices) + 1, 0);
  for (const Edge& e : edges) {
    if (e.from < 0 || e.from >= vertices || e.to < 0 || e.to >= vertices) {
      throw Error(ErrorCode::config, "graph: edge endpoint out of range");
    }
    ++g.row_offsets[e.from + 1];
  }
  for (Word i = 0; i < vertices; ++i) {
    g.row_offsets[i + 1] += g.row_offsets[i];
  }
  g.columns.resize(edges.size());
  if (weighted) {
    g.weights.resize(edges.size());
  }
  std::vector<Word> cursor(g.row_offsets.begin(), g.row_offsets.end() - 1);
  for (const Edge& e : edges) {
    const Word at = cursor[e.from]++;
    g.columns[at] = e.to;
    if (weighted) {
      g.weights[at] = e.weight;
    }
  }
  g.validate(weighted);
  return g;
}

GraphCSR random_graph(Word vertices, Word edges, std::uint64_t seed, Word max_weight) {
  if (vertices < 1) {
    throw Error(ErrorCode::config, "graph: need at least one vertex");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Word> vertex(0, vertices - 1);
  std::uniform_int_distribution<Word> weight(0, std::max<Word>(0, max_weight));
  std::vector<Edge> list;
  list.reserve(static_cast<std::size_t>(edges));
  for (Word i = 0; i < edges; ++i) {
    const Word from = vertex(rng);
    const Word to = vertex(rng);
    list.push_back({from, to, weight(rng)});
  }
  return make_csr(vertices, list, true);
}

namespace {

ProgramOutput distances_output(std::span<const Word> dist) {
  ProgramOutput out;
  out.words.assign(dist.begin(), dist.end());
  std::ostringstream text;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    text << (i ? " " : "");
    if (dist[i] == kInfinity) {
      text << "inf";
    } else {
      text << dist[i];
    }
  }
  out.text = text.str();
  return out;
}

void check_source(const GraphCSR& g, Word source) {
  if (source < 0 || source >= g.vertex_count()) {
    throw Error(ErrorCode::config, "graph: source vertex " + std::to_string(source) +
                                       " out of range");
  }
}

}  // namespace

// Level-synchronous BFS with the task vector as the worklist. Every task of
// epoch k holds a vertex at distance k; a neighbor is forked exactly once, by
// whichever task lowers its distance first.
Program bfs_program(const GraphCSR& graph, Word source) {
  graph.validate(false);
  check_source(graph, source);

  ProgramBuilder b;
  auto& arena = b.arena();
  const BufferId rows = arena.add_words("row_offsets", graph.row_offsets);
  const BufferId cols = arena.add_words("columns", graph.columns);
  std::vector<Word> init(static_cast<std::size_t>(graph.vertex_count()), kInfinity);
  init[source] = 0;
  const BufferId dist = arena.add_words("dist", std::move(init));

  auto& reg = b.registry();
  const TaskTypeId visit = reg.declare_task("bfs_visit");
  reg.define_task(visit, [=](TaskContext& ctx) {
    Arena& a = ctx.arena();
    const Word v = ctx.arg(0);
    const auto r = a.words(rows);
    const auto c = a.words(cols);
    auto d = a.words(dist);
    const Word next = d[v] + 1;
    for (Word e = r[v]; e < r[v + 1]; ++e) {
      if (atomic_min(d[c[e]], next)) {
        ctx.fork(visit, {c[e]});
      }
    }
  });
  b.root(visit, {source});
  b.extractor([=](const Arena& a, const RuntimeState&) { return distances_output(a.words(dist)); });
  return std::move(b).build();
}

// Bellman-Ford style relaxation. During an epoch `dist` is read-only; offers
// go to `cand` by atomic minimum and a map over the relaxing vertex's edges
// folds them into `dist` before the next epoch. A task (v, d) proceeds only
// if d is v's committed distance and it wins v's claim for this epoch, so
// fork counts do not depend on intra-epoch ordering.
Program sssp_program(const GraphCSR& graph, Word source) {
  graph.validate(true);
  check_source(graph, source);

  ProgramBuilder b;
  auto& arena = b.arena();
  const auto v_count = static_cast<std::size_t>(graph.vertex_count());
  const BufferId rows = arena.add_words("row_offsets", graph.row_offsets);
  const BufferId cols = arena.add_words("columns", graph.columns);
  const BufferId wts = arena.add_words("weights", graph.weights);
  std::vector<Word> init(v_count, kInfinity);
  init[source] = 0;
  const BufferId dist = arena.add_words("dist", init);
  const BufferId cand = arena.add_words("cand", init);
  const BufferId claim = arena.add_words("claim", std::vector<Word>(v_count, -1));

  auto& reg = b.registry();
  const TaskTypeId visit = reg.declare_task("sssp_visit");
  const MapFnId commit = reg.declare_map("sssp_commit");

  reg.define_task(visit, [=](TaskContext& ctx) {
    Arena& a = ctx.arena();
    const Word v = ctx.arg(0);
    const Word d = ctx.arg(1);
    const auto dv = a.words(dist);
    if (d != dv[v] || atomic_exchange(a.words(claim)[v], ctx.cen()) == ctx.cen()) {
      return;
    }
    const auto r = a.words(rows);
    const auto c = a.words(cols);
    const auto w = a.words(wts);
    auto cv = a.words(cand);
    bool offered = false;
    for (Word e = r[v]; e < r[v + 1]; ++e) {
      const Word u = c[e];
      const Word offer = d + w[e];
      if (offer < dv[u]) {
        atomic_min(cv[u], offer);
        ctx.fork(visit, {u, offer});
        offered = true;
      }
    }
    if (offered) {
      ctx.map(commit, {v}, r[v + 1] - r[v]);
    }
  });
  reg.define_map(commit, [=](Arena& a, const TaskArgs& args, std::int64_t i) {
    const Word u = a.words(cols)[a.words(rows)[args[0]] + i];
    atomic_min(a.words(dist)[u], a.words(cand)[u]);
  });

  b.root(visit, {source, 0});
  b.extractor([=](const Arena& a, const RuntimeState&) { return distances_output(a.words(dist)); });
  return std::move(b).build();
}

}  // namespace trees::apps
