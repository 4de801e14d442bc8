#include "decmatch/static_match.hpp"

#include <algorithm>
#include <map>

#include "blossom.hpp"
#include "decmatch/oracle.hpp"

namespace decmatch {

Rational GeneralDuals::yr(Vertex u, Vertex v) const {
  Rational total = y.at(u) + y.at(v);
  for (const auto& set : family) {
    if (set.r == 0) continue;
    if (std::binary_search(set.members.begin(), set.members.end(), u) &&
        std::binary_search(set.members.begin(), set.members.end(), v))
      total += set.r;
  }
  return total;
}

Rational GeneralDuals::objective() const {
  Rational total = 0;
  for (const auto& val : y) total += val;
  for (const auto& set : family)
    total += set.r * static_cast<long>((set.members.size() - 1) / 2);
  return total;
}

bool GeneralDuals::laminar() const {
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      const auto& A = family[a].members;
      const auto& B = family[b].members;
      std::vector<Vertex> common;
      std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(common));
      if (!common.empty() && common.size() != A.size() && common.size() != B.size()) return false;
    }
  }
  return true;
}

CertifiedMatching static_weighted_match(const Multigraph& g, const Epsilon& eps,
                                        const StaticOptions& options) {
  const std::size_t n = g.vertex_count();
  CertifiedMatching cert;
  cert.duals.y.assign(n, 0);

  // Heaviest representative per vertex pair.
  std::map<std::pair<Vertex, Vertex>, EdgeId> rep;
  for (EdgeId e : g.alive_edges()) {
    const Edge& ed = g.edge(e);
    auto key = std::make_pair(std::min(ed.u, ed.v), std::max(ed.u, ed.v));
    auto it = rep.find(key);
    if (it == rep.end() || g.edge(it->second).w < ed.w) rep[key] = e;
  }
  std::vector<EdgeId> reps;
  for (const auto& [_, e] : rep) reps.push_back(e);
  std::sort(reps.begin(), reps.end());

  std::vector<long> compact(n, -1);
  std::vector<Vertex> original;
  for (EdgeId e : reps) {
    for (Vertex x : {g.edge(e).u, g.edge(e).v}) {
      if (compact[x] == -1) {
        compact[x] = static_cast<long>(original.size());
        original.push_back(x);
      }
    }
  }
  if (reps.empty()) {
    cert.f = 0;
    return cert;
  }

  std::vector<detail::BlossomEdge> edges;
  edges.reserve(reps.size());
  for (EdgeId e : reps)
    edges.push_back({compact[g.edge(e).u], compact[g.edge(e).v], g.edge(e).w});
  const long k = static_cast<long>(original.size());
  auto state = detail::max_weight_matching(k, edges);

  for (std::size_t idx = 0; idx < reps.size(); ++idx) {
    long a = edges[idx].i, b = edges[idx].j;
    if (state.mate[a] == b) cert.matching.push_back(reps[idx]);
  }
  std::sort(cert.matching.begin(), cert.matching.end());
  cert.weight = g.weight_of(cert.matching);

  for (long c = 0; c < k; ++c) cert.duals.y[original[c]] = make_rational(state.dualvar[c], 2);
  for (long b = k; b < 2 * k; ++b) {
    if (state.blossombase[b] < 0) continue;
    OddSetDual set;
    for (long c : state.leaves(b)) set.members.push_back(original[c]);
    std::sort(set.members.begin(), set.members.end());
    set.r = Rational(state.dualvar[b]);
    cert.duals.family.push_back(std::move(set));
  }
  cert.f = cert.duals.objective();

  if (options.shrink) cert.shrink_inflation = shrink_large_blossoms(cert.duals, eps);
  if (options.grid) cert.grid_inflation = round_duals_to_grid(cert.duals, eps);
  cert.f = cert.duals.objective();
  return cert;
}

Rational shrink_large_blossoms(GeneralDuals& duals, const Epsilon& eps) {
  const std::size_t limit = 3 * static_cast<std::size_t>(eps.inverse());
  Rational before = duals.objective();
  for (auto& set : duals.family) {
    if (set.members.size() <= limit || set.r == 0) continue;
    Rational half = set.r / 2;
    for (Vertex v : set.members) duals.y.at(v) += half;
    set.r = 0;
  }
  return duals.objective() - before;
}

Rational round_duals_to_grid(GeneralDuals& duals, const Epsilon& eps) {
  Rational before = duals.objective();
  const Rational step = eps.value();
  auto up = [&](Rational& q) { q = ceil(q / step) * step; };
  for (auto& val : duals.y) up(val);
  for (auto& set : duals.family) up(set.r);
  return duals.objective() - before;
}

bool CertificateReport::ok() const {
  return std::none_of(items.begin(), items.end(),
                      [](const CertificateItem& it) { return it.status == ItemStatus::Fail; });
}

std::string to_string(ItemStatus s) {
  switch (s) {
    case ItemStatus::Pass: return "pass";
    case ItemStatus::Fail: return "fail";
    case ItemStatus::Skipped: return "skipped";
  }
  return "?";
}

CertificateReport verify_certificate(const Multigraph& g, const CertifiedMatching& cert,
                                     const Epsilon& eps, bool grid_expected) {
  const Rational e = eps.value();
  CertificateReport report;
  report.items.resize(6);
  for (int i = 0; i < 6; ++i) report.items[static_cast<std::size_t>(i)].item = i + 1;
  auto& it1 = report.items[0];
  auto& it2 = report.items[1];
  auto& it3 = report.items[2];
  auto& it4 = report.items[3];
  auto& it5 = report.items[4];
  auto& it6 = report.items[5];

  bool have_oracle = false;
  Weight optimum = 0;
  try {
    optimum = exact_mwm(g).weight;
    have_oracle = true;
  } catch (const std::invalid_argument&) {
  }

  if (!is_matching(g, cert.matching)) {
    it1.status = ItemStatus::Fail;
    it1.note = "output is not a matching of alive edges";
  } else if (!have_oracle) {
    it1.status = ItemStatus::Skipped;
    it1.note = "more than 16 non-isolated vertices; oracle unavailable";
  } else if (Rational(cert.weight) < (1 - e) * optimum || cert.weight != g.weight_of(cert.matching)) {
    it1.status = ItemStatus::Fail;
    it1.note = "w(M) = " + std::to_string(cert.weight) + " below (1-eps) * " + std::to_string(optimum);
  }

  if (!cert.duals.laminar()) {
    it2.status = ItemStatus::Fail;
    it2.note = "family is not laminar";
  }
  for (const auto& set : cert.duals.family) {
    if (set.members.size() % 2 == 0 || set.r < 0) {
      it2.status = ItemStatus::Fail;
      it2.note = "even set or negative r in family";
    }
  }
  for (const auto& val : cert.duals.y) {
    if (val < 0) {
      it2.status = ItemStatus::Fail;
      it2.note = "negative vertex dual";
    }
  }

  const std::size_t limit = 3 * static_cast<std::size_t>(eps.inverse());
  for (const auto& set : cert.duals.family) {
    if (set.r > 0 && set.members.size() > limit) {
      it3.status = ItemStatus::Fail;
      it3.note = "positive dual on a set of size " + std::to_string(set.members.size());
    }
  }

  if (!grid_expected) {
    it4.status = ItemStatus::Skipped;
    it4.note = "grid mode not requested";
  } else {
    auto on_grid = [&](const Rational& q) { return is_integer(q / e); };
    bool ok = std::all_of(cert.duals.y.begin(), cert.duals.y.end(), on_grid);
    for (const auto& set : cert.duals.family) ok = ok && on_grid(set.r);
    if (!ok) {
      it4.status = ItemStatus::Fail;
      it4.note = "dual value off the eps grid";
    }
  }

  for (EdgeId id : g.alive_edges()) {
    if (cert.duals.yr(g, id) < (1 - e) * g.edge(id).w) it5.failing_edges.push_back(id);
  }
  if (!it5.failing_edges.empty()) {
    it5.status = ItemStatus::Fail;
    it5.note = std::to_string(it5.failing_edges.size()) + " edges under-covered";
  }

  if (cert.f != cert.duals.objective()) {
    it6.status = ItemStatus::Fail;
    it6.note = "reported f differs from the dual objective";
  } else if (have_oracle) {
    if (cert.f > (1 + e) * optimum) {
      it6.status = ItemStatus::Fail;
      it6.note = "f = " + to_string(cert.f) + " above (1+eps) * " + std::to_string(optimum);
    }
  } else if (cert.f > (1 + e) * cert.weight) {
    it6.status = ItemStatus::Skipped;
    it6.note = "oracle unavailable and f exceeds (1+eps) w(M)";
  }
  return report;
}

}  // namespace decmatch
