#include "decmatch/frac_match.hpp"

#include <algorithm>
#include <queue>

namespace decmatch {

namespace {

std::vector<std::vector<std::size_t>> out_lists(const EligibleGraph& el) {
  std::vector<std::vector<std::size_t>> out(el.vertices);
  for (std::size_t i = 0; i < el.arcs.size(); ++i) out[el.arcs[i].from].push_back(i);
  return out;
}

}  // namespace

bool is_acyclic(const EligibleGraph& el) {
  std::vector<std::size_t> indegree(el.vertices, 0);
  for (const auto& a : el.arcs) ++indegree[a.to];
  auto out = out_lists(el);
  std::vector<Vertex> ready;
  for (Vertex v = 0; v < el.vertices; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    Vertex v = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t i : out[v])
      if (--indegree[el.arcs[i].to] == 0) ready.push_back(el.arcs[i].to);
  }
  return seen == el.vertices;
}

std::vector<bool> reachable_from_free_left(const EligibleGraph& el, const FlowState& flow) {
  auto out = out_lists(el);
  std::vector<bool> seen(el.vertices, false);
  std::queue<Vertex> q;
  for (Vertex v = 0; v < el.vertices; ++v) {
    if (flow.left[v] && flow.free(v)) {
      seen[v] = true;
      q.push(v);
    }
  }
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (std::size_t i : out[v]) {
      const auto& a = el.arcs[i];
      if (!seen[a.to] && flow.residual(a) > 0) {
        seen[a.to] = true;
        q.push(a.to);
      }
    }
  }
  return seen;
}

bool has_augmenting_path(const EligibleGraph& el, const FlowState& flow) {
  auto seen = reachable_from_free_left(el, flow);
  for (Vertex v = 0; v < el.vertices; ++v)
    if (seen[v] && !flow.left[v] && flow.free(v)) return true;
  return false;
}

std::size_t maximal_augmenting_paths(const EligibleGraph& el, FlowState& flow) {
  if (!is_acyclic(el)) throw std::logic_error("eligible graph has a cycle");
  auto out = out_lists(el);
  std::vector<std::size_t> cursor(el.vertices, 0);
  std::vector<bool> dead(el.vertices, false);
  std::size_t paths = 0;

  auto apply = [&](std::size_t arc, const Rational& delta) {
    const auto& a = el.arcs[arc];
    if (a.forward)
      flow.x[a.edge] += delta;
    else
      flow.x[a.edge] -= delta;
  };

  for (Vertex s = 0; s < el.vertices; ++s) {
    if (!flow.left[s]) continue;
    while (flow.free(s) && !dead[s]) {
      // Depth-first search with current-arc pointers.
      std::vector<Vertex> stack{s};
      std::vector<std::size_t> path;
      bool found = false;
      while (!stack.empty()) {
        Vertex v = stack.back();
        if (v != s && !flow.left[v] && flow.free(v)) {
          found = true;
          break;
        }
        bool advanced = false;
        while (cursor[v] < out[v].size()) {
          std::size_t arc = out[v][cursor[v]];
          const auto& a = el.arcs[arc];
          if (!dead[a.to] && flow.residual(a) > 0) {
            path.push_back(arc);
            stack.push_back(a.to);
            advanced = true;
            break;
          }
          ++cursor[v];
        }
        if (advanced) continue;
        dead[v] = true;
        stack.pop_back();
        if (!path.empty()) {
          path.pop_back();
          ++cursor[stack.back()];
        }
      }
      if (!found) break;

      Vertex end = stack.back();
      Rational delta = std::min<Rational>(1 - flow.load[s], 1 - flow.load[end]);
      for (std::size_t arc : path) delta = std::min<Rational>(delta, flow.residual(el.arcs[arc]));
      for (std::size_t arc : path) apply(arc, delta);
      flow.load[s] += delta;
      flow.load[end] += delta;
      ++paths;
    }
  }
  return paths;
}

FracSolver::FracSolver(const Multigraph& g, const CapacityFn& kappa, const Epsilon& eps,
                       std::vector<bool> left, bool check_invariants)
    : g_(g), kappa_(kappa), eps_(eps.value()), check_(check_invariants) {
  const std::size_t n = g.vertex_count();
  if (left.size() != n) throw std::invalid_argument("side vector size mismatch");
  edges_ = g.alive_edges();
  for (EdgeId e : edges_) {
    const Edge& ed = g.edge(e);
    if (left[ed.u] == left[ed.v])
      throw std::invalid_argument("edge " + std::to_string(e) + " does not cross the sides");
    if (kappa[e] <= 0 || kappa[e] > 1)
      throw std::invalid_argument("capacity outside (0, 1] on edge " + std::to_string(e));
  }
  flow_.graph = &g;
  flow_.kappa = &kappa;
  flow_.left = std::move(left);
  flow_.x.assign(g.edge_slots(), 0);
  flow_.load.assign(n, 0);
  y_.assign(n, 0);
  for (Vertex v = 0; v < n; ++v)
    if (flow_.left[v]) y_[v] = Rational(g.max_weight()) - eps_;
  z_.assign(g.edge_slots(), 0);
}

Rational FracSolver::yz(EdgeId e) const {
  const Edge& ed = g_.edge(e);
  return y_[ed.u] + y_[ed.v] + z_[e];
}

bool FracSolver::finished() const {
  for (Vertex v = 0; v < g_.vertex_count(); ++v)
    if (flow_.left[v] && flow_.free(v) && y_[v] > 0) return false;
  return true;
}

EligibleGraph FracSolver::eligible_graph() const {
  EligibleGraph el;
  el.vertices = g_.vertex_count();
  for (EdgeId e : edges_) {
    const Edge& ed = g_.edge(e);
    Vertex l = flow_.left[ed.u] ? ed.u : ed.v;
    Vertex r = flow_.left[ed.u] ? ed.v : ed.u;
    Rational slack = yz(e) - ed.w;
    if (slack == -eps_ && flow_.x[e] < kappa_[e]) el.arcs.push_back({l, r, e, true});
    if (slack == eps_ && flow_.x[e] > 0) el.arcs.push_back({r, l, e, false});
  }
  return el;
}

void FracSolver::step() {
  // Backward eligible edges shed z until they leave the eligible graph.
  for (EdgeId e : edges_) {
    if (z_[e] > 0 && flow_.x[e] > 0 && yz(e) - g_.edge(e).w == eps_)
      z_[e] -= std::min<Rational>(z_[e], yz(e) - g_.edge(e).w + eps_);
  }

  EligibleGraph el = eligible_graph();
  last_acyclic_ = is_acyclic(el);
  {
    std::vector<bool> fwd(g_.edge_slots(), false), bwd(g_.edge_slots(), false);
    for (const auto& a : el.arcs) (a.forward ? fwd : bwd)[a.edge] = true;
    last_exclusive_ = true;
    for (EdgeId e : edges_)
      if (fwd[e] && bwd[e]) last_exclusive_ = false;
  }
  if (!last_acyclic_) {
    ++iteration_;
    trace_.push_back(snapshot());
    throw InvariantViolation("eligible graph has a cycle at iteration " +
                                 std::to_string(iteration_),
                             trace_);
  }
  maximal_augmenting_paths(el, flow_);

  el = eligible_graph();
  last_no_path_ = !has_augmenting_path(el, flow_);

  auto in_z = reachable_from_free_left(el, flow_);
  for (EdgeId e : edges_) {
    const Edge& ed = g_.edge(e);
    Vertex l = flow_.left[ed.u] ? ed.u : ed.v;
    Vertex r = flow_.left[ed.u] ? ed.v : ed.u;
    if (flow_.x[e] > 0 && in_z[l] && !in_z[r] && yz(e) - ed.w == -eps_) z_[e] += eps_;
  }
  for (Vertex v = 0; v < g_.vertex_count(); ++v) {
    if (!in_z[v]) continue;
    if (flow_.left[v])
      y_[v] -= eps_;
    else
      y_[v] += eps_;
  }

  ++iteration_;
  trace_.push_back(snapshot());
  if (check_ && !trace_.back().all())
    throw InvariantViolation("solver invariant broken at iteration " + std::to_string(iteration_),
                             trace_);
}

void FracSolver::run() {
  const Rational limit = Rational(g_.max_weight()) / eps_ + 1;
  while (!finished()) {
    if (Rational(static_cast<long>(iteration_)) >= limit)
      throw InvariantViolation("iteration bound W/eps + 1 exceeded", trace_);
    step();
  }
}

InvariantSnapshot FracSolver::snapshot() const {
  InvariantSnapshot s;
  s.iteration = iteration_;
  s.exclusive = last_exclusive_;
  s.acyclic = last_acyclic_;
  s.no_augmenting_path = last_no_path_;
  auto on_grid = [&](const Rational& q) { return is_integer(q / eps_); };

  for (Vertex v = 0; v < g_.vertex_count(); ++v) {
    if (!on_grid(y_[v])) s.granularity = false;
    if (flow_.load[v] > 1) s.feasible = false;
  }
  bool first = true;
  Rational common;
  Rational min_left;
  bool have_left = false;
  for (Vertex v = 0; v < g_.vertex_count(); ++v) {
    if (!flow_.left[v]) {
      if (flow_.free(v) && y_[v] != 0) s.free_duals = false;
      continue;
    }
    if (!have_left || y_[v] < min_left) min_left = y_[v];
    have_left = true;
    if (!flow_.free(v)) continue;
    if (first) {
      common = y_[v];
      first = false;
    } else if (y_[v] != common) {
      s.free_duals = false;
    }
  }
  s.has_free_left = !first;
  s.free_dual = first ? Rational(0) : common;
  if (!first && common > min_left) s.free_duals = false;

  for (EdgeId e : edges_) {
    const Rational& x = flow_.x[e];
    if (x > 0) ++s.support;
    if (!on_grid(z_[e]) || z_[e] < 0) s.granularity = false;
    if (x < 0 || x > kappa_[e]) s.feasible = false;
    Rational slack = yz(e) - g_.edge(e).w;
    bool has_forward = x < kappa_[e];
    bool has_backward = x > 0;
    if ((has_forward || has_backward) && slack < -eps_) s.domination = false;
    if (has_backward && slack > eps_) s.tightness = false;
    if (z_[e] > 0 && x != kappa_[e]) s.slackness = false;
  }
  return s;
}

FractionalMatching FracSolver::matching() const {
  FractionalMatching out;
  for (EdgeId e : edges_)
    if (flow_.x[e] > 0) out.set(e, flow_.x[e]);
  return out;
}

FracSolveResult weighted_frac_match(const Multigraph& g, const CapacityFn& kappa,
                                    const Epsilon& eps) {
  return weighted_frac_match(g, kappa, eps, bipartition(g));
}

FracSolveResult weighted_frac_match(const Multigraph& g, const CapacityFn& kappa,
                                    const Epsilon& eps, const std::vector<bool>& left) {
  FracSolver solver(g, kappa, eps, left);
  solver.run();
  FracSolveResult out;
  out.x = solver.matching();
  out.y = solver.y();
  out.z = solver.z();
  out.trace = solver.trace();
  out.iterations = solver.iterations();
  out.value = out.x.weight(g);
  return out;
}

FractionalMatching weighted_frac_match_general(const Multigraph& g, const CapacityFn& kappa,
                                               const Epsilon& eps, const Rational& group_limit) {
  for (const auto& key : g.alive_groups()) {
    Rational total = kappa.group_total(g, key);
    if (total > group_limit)
      throw std::invalid_argument("class (" + std::to_string(key.u) + ", " +
                                  std::to_string(key.v) + ", w=" + std::to_string(key.w) +
                                  ") has capacity " + to_string(total) + " above the limit " +
                                  to_string(group_limit));
  }
  auto cover = double_cover(g, kappa);
  auto sol = weighted_frac_match(cover.graph, cover.kappa, eps, cover.left);
  return project_cover(cover, sol.x);
}

}  // namespace decmatch
