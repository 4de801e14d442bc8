// Primal-dual weighted matching on general graphs (Edmonds; Galil's O(n^3)
// bookkeeping). Follows the classic array-based formulation: endpoints are
// numbered 2k and 2k+1 for edge k, blossoms get ids nvertex..2*nvertex-1.

#include "blossom.hpp"

#include <algorithm>
#include <stdexcept>

namespace decmatch::detail {

namespace {

void check(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("blossom invariant: ") + what);
}

// Python-style index into a cyclic list.
long wrap(long idx, long size) { return ((idx % size) + size) % size; }

class Solver {
 public:
  Solver(long nvertex, const std::vector<BlossomEdge>& edges)
      : n_(nvertex), edges_(edges), nedge_(static_cast<long>(edges.size())) {
    std::int64_t maxweight = 0;
    for (const auto& e : edges_) maxweight = std::max(maxweight, e.w);
    endpoint_.resize(2 * nedge_);
    neighbend_.assign(n_, {});
    for (long k = 0; k < nedge_; ++k) {
      endpoint_[2 * k] = edges_[k].i;
      endpoint_[2 * k + 1] = edges_[k].j;
      neighbend_[edges_[k].i].push_back(2 * k + 1);
      neighbend_[edges_[k].j].push_back(2 * k);
    }
    mate_.assign(n_, -1);
    label_.assign(2 * n_, 0);
    labelend_.assign(2 * n_, -1);
    inblossom_.resize(n_);
    for (long v = 0; v < n_; ++v) inblossom_[v] = v;
    blossomparent_.assign(2 * n_, -1);
    blossomchilds_.assign(2 * n_, {});
    blossombase_.assign(2 * n_, -1);
    for (long v = 0; v < n_; ++v) blossombase_[v] = v;
    blossomendps_.assign(2 * n_, {});
    bestedge_.assign(2 * n_, -1);
    blossombestedges_.assign(2 * n_, {});
    hasbestedges_.assign(2 * n_, false);
    for (long b = 2 * n_ - 1; b >= n_; --b) unusedblossoms_.push_back(b);
    std::reverse(unusedblossoms_.begin(), unusedblossoms_.end());
    dualvar_.assign(2 * n_, 0);
    for (long v = 0; v < n_; ++v) dualvar_[v] = maxweight;
    allowedge_.assign(nedge_, false);
  }

  BlossomState run();

 private:
  std::int64_t slack(long k) const {
    return dualvar_[edges_[k].i] + dualvar_[edges_[k].j] - 2 * edges_[k].w;
  }

  void leaves(long b, std::vector<long>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (long t : blossomchilds_[b]) leaves(t, out);
  }

  std::vector<long> leaves(long b) const {
    std::vector<long> out;
    leaves(b, out);
    return out;
  }

  void assign_label(long w, int t, long p);
  long scan_blossom(long v, long w);
  void add_blossom(long base, long k);
  void expand_blossom(long b, bool endstage);
  void augment_blossom(long b, long v);
  void augment_matching(long k);

  long n_;
  std::vector<BlossomEdge> edges_;
  long nedge_;
  std::vector<long> endpoint_;
  std::vector<std::vector<long>> neighbend_;
  std::vector<long> mate_;
  std::vector<int> label_;
  std::vector<long> labelend_;
  std::vector<long> inblossom_;
  std::vector<long> blossomparent_;
  std::vector<std::vector<long>> blossomchilds_;
  std::vector<long> blossombase_;
  std::vector<std::vector<long>> blossomendps_;
  std::vector<long> bestedge_;
  std::vector<std::vector<long>> blossombestedges_;
  std::vector<bool> hasbestedges_;
  std::vector<long> unusedblossoms_;
  std::vector<std::int64_t> dualvar_;
  std::vector<bool> allowedge_;
  std::vector<long> queue_;
};

void Solver::assign_label(long w, int t, long p) {
  long b = inblossom_[w];
  check(label_[w] == 0 && label_[b] == 0, "relabel of labelled vertex");
  label_[w] = label_[b] = t;
  labelend_[w] = labelend_[b] = p;
  bestedge_[w] = bestedge_[b] = -1;
  if (t == 1) {
    leaves(b, queue_);
  } else if (t == 2) {
    long base = blossombase_[b];
    check(mate_[base] >= 0, "T-blossom base unmatched");
    assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
  }
}

long Solver::scan_blossom(long v, long w) {
  std::vector<long> path;
  long base = -1;
  while (v != -1 || w != -1) {
    long b = inblossom_[v];
    if (label_[b] & 4) {
      base = blossombase_[b];
      break;
    }
    check(label_[b] == 1, "scan through non-S blossom");
    path.push_back(b);
    label_[b] = 5;
    if (labelend_[b] == -1) {
      v = -1;
    } else {
      v = endpoint_[labelend_[b]];
      b = inblossom_[v];
      check(label_[b] == 2, "scan expected T-blossom");
      v = endpoint_[labelend_[b]];
    }
    if (w != -1) std::swap(v, w);
  }
  for (long b : path) label_[b] = 1;
  return base;
}

void Solver::add_blossom(long base, long k) {
  long v = edges_[k].i, w = edges_[k].j;
  long bb = inblossom_[base];
  long bv = inblossom_[v];
  long bw = inblossom_[w];
  long b = unusedblossoms_.back();
  unusedblossoms_.pop_back();
  blossombase_[b] = base;
  blossomparent_[b] = -1;
  blossomparent_[bb] = b;
  std::vector<long> path, endps;
  while (bv != bb) {
    blossomparent_[bv] = b;
    path.push_back(bv);
    endps.push_back(labelend_[bv]);
    check(labelend_[bv] >= 0, "blossom path broken");
    v = endpoint_[labelend_[bv]];
    bv = inblossom_[v];
  }
  path.push_back(bb);
  std::reverse(path.begin(), path.end());
  std::reverse(endps.begin(), endps.end());
  endps.push_back(2 * k);
  while (bw != bb) {
    blossomparent_[bw] = b;
    path.push_back(bw);
    endps.push_back(labelend_[bw] ^ 1);
    check(labelend_[bw] >= 0, "blossom path broken");
    w = endpoint_[labelend_[bw]];
    bw = inblossom_[w];
  }
  check(label_[bb] == 1, "blossom base not S");
  blossomchilds_[b] = path;
  blossomendps_[b] = endps;
  label_[b] = 1;
  labelend_[b] = labelend_[bb];
  dualvar_[b] = 0;
  for (long x : leaves(b)) {
    if (label_[inblossom_[x]] == 2) queue_.push_back(x);
    inblossom_[x] = b;
  }
  std::vector<long> bestedgeto(2 * n_, -1);
  for (long sub : path) {
    std::vector<std::vector<long>> nblists;
    if (!hasbestedges_[sub]) {
      for (long x : leaves(sub)) {
        std::vector<long> list;
        for (long p : neighbend_[x]) list.push_back(p / 2);
        nblists.push_back(std::move(list));
      }
    } else {
      nblists.push_back(blossombestedges_[sub]);
    }
    for (const auto& nblist : nblists) {
      for (long kk : nblist) {
        long i = edges_[kk].i, j = edges_[kk].j;
        if (inblossom_[j] == b) std::swap(i, j);
        long bj = inblossom_[j];
        if (bj != b && label_[bj] == 1 &&
            (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj])))
          bestedgeto[bj] = kk;
      }
    }
    blossombestedges_[sub].clear();
    hasbestedges_[sub] = false;
    bestedge_[sub] = -1;
  }
  blossombestedges_[b].clear();
  for (long kk : bestedgeto)
    if (kk != -1) blossombestedges_[b].push_back(kk);
  hasbestedges_[b] = true;
  bestedge_[b] = -1;
  for (long kk : blossombestedges_[b])
    if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
}

void Solver::expand_blossom(long b, bool endstage) {
  for (long s : std::vector<long>(blossomchilds_[b])) {
    blossomparent_[s] = -1;
    if (s < n_) {
      inblossom_[s] = s;
    } else if (endstage && dualvar_[s] == 0) {
      expand_blossom(s, endstage);
    } else {
      for (long x : leaves(s)) inblossom_[x] = s;
    }
  }
  if (!endstage && label_[b] == 2) {
    check(labelend_[b] >= 0, "T-blossom without label end");
    auto& childs = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    const long len = static_cast<long>(childs.size());
    long entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
    long j = static_cast<long>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
    long jstep, endptrick;
    if (j & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    long p = labelend_[b];
    while (j != 0) {
      label_[endpoint_[p ^ 1]] = 0;
      label_[endpoint_[endps[wrap(j - endptrick, len)] ^ endptrick ^ 1]] = 0;
      assign_label(endpoint_[p ^ 1], 2, p);
      allowedge_[endps[wrap(j - endptrick, len)] / 2] = true;
      j += jstep;
      p = endps[wrap(j - endptrick, len)] ^ endptrick;
      allowedge_[p / 2] = true;
      j += jstep;
    }
    long bv = childs[wrap(j, len)];
    label_[endpoint_[p ^ 1]] = label_[bv] = 2;
    labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
    bestedge_[bv] = -1;
    j += jstep;
    while (childs[wrap(j, len)] != entrychild) {
      bv = childs[wrap(j, len)];
      if (label_[bv] == 1) {
        j += jstep;
        continue;
      }
      long v = -1;
      for (long x : leaves(bv)) {
        v = x;
        if (label_[x] != 0) break;
      }
      if (v != -1 && label_[v] != 0) {
        check(label_[v] == 2 && inblossom_[v] == bv, "sub-blossom relabel");
        label_[v] = 0;
        label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
        assign_label(v, 2, labelend_[v]);
      }
      j += jstep;
    }
  }
  label_[b] = -1;
  labelend_[b] = -1;
  blossomchilds_[b].clear();
  blossomendps_[b].clear();
  blossombase_[b] = -1;
  blossombestedges_[b].clear();
  hasbestedges_[b] = false;
  bestedge_[b] = -1;
  unusedblossoms_.push_back(b);
}

void Solver::augment_blossom(long b, long v) {
  long t = v;
  while (blossomparent_[t] != b) t = blossomparent_[t];
  if (t >= n_) augment_blossom(t, v);
  auto& childs = blossomchilds_[b];
  auto& endps = blossomendps_[b];
  const long len = static_cast<long>(childs.size());
  long i = static_cast<long>(std::find(childs.begin(), childs.end(), t) - childs.begin());
  long j = i;
  long jstep, endptrick;
  if (i & 1) {
    j -= len;
    jstep = 1;
    endptrick = 0;
  } else {
    jstep = -1;
    endptrick = 1;
  }
  while (j != 0) {
    j += jstep;
    t = childs[wrap(j, len)];
    long p = endps[wrap(j - endptrick, len)] ^ endptrick;
    if (t >= n_) augment_blossom(t, endpoint_[p]);
    j += jstep;
    t = childs[wrap(j, len)];
    if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
    mate_[endpoint_[p]] = p ^ 1;
    mate_[endpoint_[p ^ 1]] = p;
  }
  std::rotate(childs.begin(), childs.begin() + i, childs.end());
  std::rotate(endps.begin(), endps.begin() + i, endps.end());
  blossombase_[b] = blossombase_[childs[0]];
  check(blossombase_[b] == v, "augment_blossom base mismatch");
}

void Solver::augment_matching(long k) {
  long v = edges_[k].i, w = edges_[k].j;
  for (auto [s, p] : {std::pair<long, long>{v, 2 * k + 1}, std::pair<long, long>{w, 2 * k}}) {
    for (;;) {
      long bs = inblossom_[s];
      check(label_[bs] == 1, "augment through non-S blossom");
      if (bs >= n_) augment_blossom(bs, s);
      mate_[s] = p;
      if (labelend_[bs] == -1) break;
      long t = endpoint_[labelend_[bs]];
      long bt = inblossom_[t];
      check(label_[bt] == 2 && labelend_[bt] >= 0, "augment expected T-blossom");
      s = endpoint_[labelend_[bt]];
      long j = endpoint_[labelend_[bt] ^ 1];
      check(blossombase_[bt] == t, "T-blossom base mismatch");
      if (bt >= n_) augment_blossom(bt, j);
      mate_[j] = labelend_[bt];
      p = labelend_[bt] ^ 1;
    }
  }
}

BlossomState Solver::run() {
  for (long stage = 0; stage < n_; ++stage) {
    std::fill(label_.begin(), label_.end(), 0);
    std::fill(bestedge_.begin(), bestedge_.end(), -1);
    for (long b = n_; b < 2 * n_; ++b) {
      blossombestedges_[b].clear();
      hasbestedges_[b] = false;
    }
    std::fill(allowedge_.begin(), allowedge_.end(), false);
    queue_.clear();
    for (long v = 0; v < n_; ++v)
      if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);

    bool augmented = false;
    for (;;) {
      while (!queue_.empty() && !augmented) {
        long v = queue_.back();
        queue_.pop_back();
        check(label_[inblossom_[v]] == 1, "queued vertex not S");
        for (long p : neighbend_[v]) {
          long k = p / 2;
          long w = endpoint_[p];
          if (inblossom_[v] == inblossom_[w]) continue;
          std::int64_t kslack = 0;
          if (!allowedge_[k]) {
            kslack = slack(k);
            if (kslack <= 0) allowedge_[k] = true;
          }
          if (allowedge_[k]) {
            if (label_[inblossom_[w]] == 0) {
              assign_label(w, 2, p ^ 1);
            } else if (label_[inblossom_[w]] == 1) {
              long base = scan_blossom(v, w);
              if (base >= 0) {
                add_blossom(base, k);
              } else {
                augment_matching(k);
                augmented = true;
                break;
              }
            } else if (label_[w] == 0) {
              label_[w] = 2;
              labelend_[w] = p ^ 1;
            }
          } else if (label_[inblossom_[w]] == 1) {
            long b = inblossom_[v];
            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
          } else if (label_[w] == 0) {
            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
          }
        }
      }
      if (augmented) break;

      int deltatype = 1;
      std::int64_t delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
      long deltaedge = -1, deltablossom = -1;
      for (long v = 0; v < n_; ++v) {
        if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
          std::int64_t d = slack(bestedge_[v]);
          if (d < delta) {
            delta = d;
            deltatype = 2;
            deltaedge = bestedge_[v];
          }
        }
      }
      for (long b = 0; b < 2 * n_; ++b) {
        if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
          std::int64_t kslack = slack(bestedge_[b]);
          check(kslack % 2 == 0, "odd slack between S-blossoms");
          std::int64_t d = kslack / 2;
          if (d < delta) {
            delta = d;
            deltatype = 3;
            deltaedge = bestedge_[b];
          }
        }
      }
      for (long b = n_; b < 2 * n_; ++b) {
        if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
            dualvar_[b] < delta) {
          delta = dualvar_[b];
          deltatype = 4;
          deltablossom = b;
        }
      }

      for (long v = 0; v < n_; ++v) {
        if (label_[inblossom_[v]] == 1)
          dualvar_[v] -= delta;
        else if (label_[inblossom_[v]] == 2)
          dualvar_[v] += delta;
      }
      for (long b = n_; b < 2 * n_; ++b) {
        if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
          if (label_[b] == 1)
            dualvar_[b] += delta;
          else if (label_[b] == 2)
            dualvar_[b] -= delta;
        }
      }

      if (deltatype == 1) {
        break;
      } else if (deltatype == 2) {
        allowedge_[deltaedge] = true;
        long i = edges_[deltaedge].i, j = edges_[deltaedge].j;
        if (label_[inblossom_[i]] == 0) std::swap(i, j);
        check(label_[inblossom_[i]] == 1, "delta-2 edge without S end");
        queue_.push_back(i);
      } else if (deltatype == 3) {
        allowedge_[deltaedge] = true;
        long i = edges_[deltaedge].i;
        check(label_[inblossom_[i]] == 1, "delta-3 edge without S end");
        queue_.push_back(i);
      } else {
        expand_blossom(deltablossom, false);
      }
    }
    if (!augmented) break;
    for (long b = n_; b < 2 * n_; ++b) {
      if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0)
        expand_blossom(b, true);
    }
  }

  BlossomState out;
  out.nvertex = n_;
  out.mate.assign(n_, -1);
  for (long v = 0; v < n_; ++v)
    if (mate_[v] >= 0) out.mate[v] = endpoint_[mate_[v]];
  out.dualvar = dualvar_;
  out.blossomparent = blossomparent_;
  out.blossombase = blossombase_;
  out.blossomchilds = blossomchilds_;
  return out;
}

}  // namespace

std::vector<long> BlossomState::leaves(long b) const {
  std::vector<long> out;
  std::vector<long> stack{b};
  while (!stack.empty()) {
    long x = stack.back();
    stack.pop_back();
    if (x < nvertex)
      out.push_back(x);
    else
      for (long c : blossomchilds[x]) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

BlossomState max_weight_matching(long nvertex, const std::vector<BlossomEdge>& edges) {
  for (const auto& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= nvertex || e.j >= nvertex || e.i == e.j)
      throw std::invalid_argument("max_weight_matching: bad edge endpoints");
    if (e.w < 0) throw std::invalid_argument("max_weight_matching: negative weight");
  }
  if (edges.empty() || nvertex == 0) {
    BlossomState out;
    out.nvertex = nvertex;
    out.mate.assign(nvertex, -1);
    out.dualvar.assign(2 * nvertex, 0);
    out.blossomparent.assign(2 * nvertex, -1);
    out.blossombase.assign(2 * nvertex, -1);
    out.blossomchilds.assign(2 * nvertex, {});
    return out;
  }
  return Solver(nvertex, edges).run();
}

}  // namespace decmatch::detail
