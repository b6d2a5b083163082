#include "tsann/signature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>

namespace tsann {

namespace {

enum class Violation { kNone, kDegeneracy, kDirection, kEdgeLength, kRange };

struct CheckDetail {
  Violation kind = Violation::kNone;
  std::size_t edge = 0;       // signature edge (or vertex, for degeneracy)
  std::size_t witness_a = 0;  // canonical positions witnessing the failure
  std::size_t witness_b = 0;
};

/**
 * Checks the signature properties for an index subsequence of the canonical
 * value sequence u.  Structural validity (increasing, spanning) is assumed.
 */
CheckDetail check_indices(const std::vector<double>& u,
                          const std::vector<std::size_t>& idx, double delta) {
  const std::size_t ell = idx.size();
  if (ell <= 1) return {};  // degenerate single-vertex signature
  auto val = [&](std::size_t k) { return u[idx[k]]; };

  // Interior vertices must be strict extrema relative to their signature
  // neighbours (otherwise the signature edge through them is degenerate).
  for (std::size_t k = 1; k + 1 < ell; ++k) {
    const double lo = std::min(val(k - 1), val(k + 1));
    const double hi = std::max(val(k - 1), val(k + 1));
    if (val(k) >= lo && val(k) <= hi) {
      return {Violation::kDegeneracy, k, idx[k], idx[k]};
    }
  }

  // Minimum edge lengths; a two-vertex signature is exempt (curves whose
  // oscillation fits the boundary pads have no long edge to offer).
  if (ell > 2) {
    for (std::size_t k = 0; k + 1 < ell; ++k) {
      const bool boundary = (k == 0) || (k + 2 == ell);
      const double need = boundary ? delta : 2 * delta;
      if (!(std::fabs(val(k + 1) - val(k)) > need)) {
        return {Violation::kEdgeLength, k, idx[k], idx[k + 1]};
      }
    }
  }

  for (std::size_t k = 0; k + 1 < ell; ++k) {
    const std::size_t a = idx[k];
    const std::size_t b = idx[k + 1];
    const double va = val(k);
    const double vb = val(k + 1);
    // Direction preservation: an ascending edge may cover no drop larger
    // than 2*delta (symmetrically for descending edges).
    if (va < vb) {
      double runmax = u[a];
      std::size_t argmax = a;
      for (std::size_t s = a; s <= b; ++s) {
        if (u[s] > runmax) {
          runmax = u[s];
          argmax = s;
        }
        if (runmax - u[s] > 2 * delta) {
          return {Violation::kDirection, k, argmax, s};
        }
      }
    } else if (va > vb) {
      double runmin = u[a];
      std::size_t argmin = a;
      for (std::size_t s = a; s <= b; ++s) {
        if (u[s] < runmin) {
          runmin = u[s];
          argmin = s;
        }
        if (u[s] - runmin > 2 * delta) {
          return {Violation::kDirection, k, argmin, s};
        }
      }
    }
    // Range: covered values stay inside the edge's span, padded by delta
    // around the first vertex on the first edge and around the last vertex
    // on the last edge.
    double lo = std::min(va, vb);
    double hi = std::max(va, vb);
    if (k == 0) {
      lo = std::min(lo, val(0) - delta);
      hi = std::max(hi, val(0) + delta);
    }
    if (k + 2 == ell) {
      lo = std::min(lo, val(ell - 1) - delta);
      hi = std::max(hi, val(ell - 1) + delta);
    }
    for (std::size_t s = a; s <= b; ++s) {
      if (u[s] < lo || u[s] > hi) {
        return {Violation::kRange, k, s, s};
      }
    }
  }
  return {};
}

/**
 * Core construction: repeatedly delete the cheapest oscillation that delta
 * allows.  Three moves exist on the doubly-linked list of surviving canonical
 * vertices: deleting an adjacent interior pair (cost = their value gap,
 * allowed up to 2*delta), and absorbing the second / second-to-last vertex
 * into the adjacent endpoint (cost = value gap to the endpoint, allowed up
 * to delta).  After each deletion the neighbourhood is re-canonicalized.
 * Processing cheapest-first keeps every deleted value inside the range the
 * surviving edge is later checked against.
 */
std::vector<std::size_t> collapse_indices(const std::vector<double>& u,
                                          double delta) {
  const std::size_t m = u.size();
  if (m <= 2) {
    std::vector<std::size_t> all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = i;
    return all;
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> prev(m), next(m);
  std::vector<char> alive(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    prev[i] = (i == 0) ? kNone : i - 1;
    next[i] = (i + 1 == m) ? kNone : i + 1;
  }
  const std::size_t head = 0;
  const std::size_t tail = m - 1;
  std::size_t count = m;

  enum Kind : int { kAbsorbFront = 0, kAbsorbBack = 1, kPair = 2 };
  struct Cand {
    double cost;
    int kind;
    std::size_t a;
    std::size_t b;
    bool operator>(const Cand& o) const {
      if (cost != o.cost) return cost > o.cost;
      if (kind != o.kind) return kind > o.kind;
      if (a != o.a) return a > o.a;
      return b > o.b;
    }
  };
  std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> heap;

  auto push_around = [&](std::size_t x) {
    if (!alive[x] || x == head || x == tail) return;
    const std::size_t p = prev[x];
    const std::size_t n = next[x];
    if (p != kNone && p != head) {
      const double c = std::fabs(u[p] - u[x]);
      if (c <= 2 * delta) heap.push({c, kPair, p, x});
    }
    if (n != kNone && n != tail) {
      const double c = std::fabs(u[x] - u[n]);
      if (c <= 2 * delta) heap.push({c, kPair, x, n});
    }
    if (p == head) {
      const double c = std::fabs(u[x] - u[head]);
      if (c <= delta) heap.push({c, kAbsorbFront, x, x});
    }
    if (n == tail) {
      const double c = std::fabs(u[x] - u[tail]);
      if (c <= delta) heap.push({c, kAbsorbBack, x, x});
    }
  };

  auto valid = [&](const Cand& c) {
    if (c.kind == kPair) {
      return alive[c.a] && alive[c.b] && next[c.a] == c.b && c.a != head &&
             c.b != tail;
    }
    if (!alive[c.a] || c.a == head || c.a == tail) return false;
    return c.kind == kAbsorbFront ? prev[c.a] == head : next[c.a] == tail;
  };

  std::vector<std::size_t> touched;
  auto splice_out = [&](std::size_t x) {
    const std::size_t p = prev[x];
    const std::size_t n = next[x];
    next[p] = n;
    prev[n] = p;
    alive[x] = 0;
    --count;
    touched.push_back(p);
    touched.push_back(n);
  };

  for (std::size_t i = 1; i + 1 < m; ++i) push_around(i);

  while (!heap.empty() && count > 2) {
    const Cand c = heap.top();
    heap.pop();
    if (!valid(c)) continue;
    touched.clear();
    splice_out(c.a);
    if (c.kind == kPair) splice_out(c.b);
    // Re-canonicalize around the splice: interior vertices that stopped
    // being strict extrema go away too (cascading).
    for (std::size_t w = 0; w < touched.size(); ++w) {
      const std::size_t x = touched[w];
      if (!alive[x] || x == head || x == tail) continue;
      const double a = u[prev[x]];
      const double b = u[x];
      const double d = u[next[x]];
      if ((a <= b && b <= d) || (a >= b && b >= d)) splice_out(x);
    }
    for (std::size_t x : touched) push_around(x);
  }

  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i != kNone; i = next[i]) out.push_back(i);
  return out;
}

/** Drops interior entries that are no longer strict extrema of the list. */
void enforce_alternation(const std::vector<double>& u,
                         std::vector<std::size_t>& idx) {
  bool changed = true;
  while (changed && idx.size() > 2) {
    changed = false;
    for (std::size_t k = 1; k + 1 < idx.size(); ++k) {
      const double a = u[idx[k - 1]];
      const double b = u[idx[k]];
      const double c = u[idx[k + 1]];
      if ((a <= b && b <= c) || (a >= b && b >= c)) {
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
        break;
      }
    }
  }
}

/**
 * Fallback used only if the construction above ever produced an invalid
 * signature: first checker-driven local surgery, then (for small curves) an
 * exhaustive search over index subsequences.  Throws if nothing works.
 */
std::vector<std::size_t> repair_indices(const std::vector<double>& u,
                                        std::vector<std::size_t> idx,
                                        double delta) {
  const std::size_t m = u.size();
  for (std::size_t round = 0; round < 4 * m + 8; ++round) {
    const CheckDetail d = check_indices(u, idx, delta);
    if (d.kind == Violation::kNone) return idx;
    switch (d.kind) {
      case Violation::kDegeneracy:
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(d.edge));
        break;
      case Violation::kDirection:
      case Violation::kRange:
        for (std::size_t w : {d.witness_a, d.witness_b}) {
          auto it = std::lower_bound(idx.begin(), idx.end(), w);
          if (it == idx.end() || *it != w) idx.insert(it, w);
        }
        break;
      case Violation::kEdgeLength: {
        const std::size_t k = d.edge;
        if (k == 0) {
          idx.erase(idx.begin() + 1);
        } else if (k + 2 == idx.size()) {
          idx.erase(idx.end() - 2);
        } else {
          idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k),
                    idx.begin() + static_cast<std::ptrdiff_t>(k) + 2);
        }
        break;
      }
      case Violation::kNone:
        break;
    }
    enforce_alternation(u, idx);
  }
  if (m <= 22) {
    // Enumerate interior-vertex subsets by increasing size.
    const std::size_t interior = m - 2;
    for (std::size_t take = 0; take <= interior; ++take) {
      std::vector<std::size_t> pick(take);
      for (std::size_t i = 0; i < take; ++i) pick[i] = i;
      while (true) {
        std::vector<std::size_t> cand;
        cand.reserve(take + 2);
        cand.push_back(0);
        for (std::size_t p : pick) cand.push_back(p + 1);
        cand.push_back(m - 1);
        if (check_indices(u, cand, delta).kind == Violation::kNone) {
          return cand;
        }
        // next combination
        std::size_t i = take;
        while (i > 0 && pick[i - 1] == interior - take + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < take; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
  }
  throw std::runtime_error(
      "compute_signature: failed to construct a valid signature");
}

Signature make_signature(const std::vector<double>& u,
                         std::vector<std::size_t> idx, double delta) {
  Signature s;
  s.delta = delta;
  s.values.reserve(idx.size());
  for (std::size_t i : idx) s.values.push_back(u[i]);
  s.indices = std::move(idx);
  return s;
}

const char* reason_name(Violation v) {
  switch (v) {
    case Violation::kDegeneracy:
      return "degeneracy";
    case Violation::kDirection:
      return "direction";
    case Violation::kEdgeLength:
      return "edge-length";
    case Violation::kRange:
      return "range";
    case Violation::kNone:
      break;
  }
  return "";
}

}  // namespace

Signature compute_signature(const TimeSeries& ts, double delta) {
  if (ts.empty()) {
    throw std::invalid_argument("compute_signature: time series is empty");
  }
  if (!(delta >= 0) || !std::isfinite(delta)) {
    throw std::invalid_argument(
        "compute_signature: delta must be non-negative and finite");
  }
  const TimeSeries canon = canonicalize(ts);
  const std::vector<double>& u = canon.values;
  std::vector<std::size_t> idx = collapse_indices(u, delta);
  if (check_indices(u, idx, delta).kind != Violation::kNone) {
    idx = repair_indices(u, std::move(idx), delta);
  }
  return make_signature(u, std::move(idx), delta);
}

SignatureCheck verify_signature(const TimeSeries& ts, const Signature& sig,
                                double delta) {
  if (ts.empty()) {
    throw std::invalid_argument("verify_signature: time series is empty");
  }
  if (!(delta >= 0) || !std::isfinite(delta)) {
    throw std::invalid_argument(
        "verify_signature: delta must be non-negative and finite");
  }
  const TimeSeries canon = canonicalize(ts);
  const std::vector<double>& u = canon.values;
  const std::vector<std::size_t>& idx = sig.indices;
  if (idx.empty()) {
    throw std::invalid_argument("verify_signature: empty index list");
  }
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= u.size()) {
      throw std::invalid_argument("verify_signature: index out of range");
    }
    if (k > 0 && idx[k] <= idx[k - 1]) {
      throw std::invalid_argument(
          "verify_signature: indices must be strictly increasing");
    }
  }
  if (idx.front() != 0 || idx.back() != u.size() - 1) {
    throw std::invalid_argument(
        "verify_signature: signature must span the canonical curve");
  }
  if (sig.values.size() != idx.size()) {
    throw std::invalid_argument(
        "verify_signature: values/indices size mismatch");
  }
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (sig.values[k] != u[idx[k]]) {
      throw std::invalid_argument(
          "verify_signature: values do not match the canonical curve");
    }
  }
  const CheckDetail d = check_indices(u, idx, delta);
  SignatureCheck out;
  out.ok = (d.kind == Violation::kNone);
  if (!out.ok) out.reason = reason_name(d.kind);
  return out;
}

TimeSeries signature_curve(const Signature& sig) {
  if (sig.values.size() == 1) {
    // A constant source collapses to one canonical vertex; as a curve the
    // signature is the degenerate two-endpoint segment at that value.
    return TimeSeries{sig.values[0], sig.values[0]};
  }
  return TimeSeries(sig.values);
}

}  // namespace tsann
