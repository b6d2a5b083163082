#include "tsann/gadgets.hpp"

#include <random>
#include <stdexcept>

namespace tsann {

namespace {

void validate_set_pair(const SetPair& sp) {
  if (sp.universe == 0) {
    throw std::invalid_argument("gadget: universe must be at least 1");
  }
  for (const std::set<std::size_t>* side : {&sp.a, &sp.b}) {
    for (std::size_t element : *side) {
      if (element < 1 || element > sp.universe) {
        throw std::invalid_argument("gadget: element outside the universe");
      }
    }
  }
}

using Point = std::vector<double>;

/** The four anchor points of one planar vector gadget: unprimed pair at
 * x = -spread, primed pair at x = +spread, selected by bit value. */
struct Anchors {
  double spread;
  Point at(int bit, bool primed) const {
    return Point{primed ? spread : -spread, bit ? -0.5 : 0.5};
  }
};

void append_vector_gadget(const BitVector& bits, const Anchors& anchors,
                          std::vector<Point>& out) {
  for (std::size_t c = 0; c < bits.size(); ++c) {
    // 1-based odd coordinates use the unprimed anchors, even the primed.
    out.push_back(anchors.at(bits[c], (c + 1) % 2 == 0));
  }
}

std::size_t validate_bit_vectors(const std::vector<BitVector>& vectors,
                                 const char* side) {
  if (vectors.empty()) {
    throw std::invalid_argument(std::string("gadget: no ") + side +
                                "-vectors given");
  }
  const std::size_t d = vectors.front().size();
  if (d == 0 || d % 2 != 0) {
    throw std::invalid_argument(
        "gadget: vector length must be even and positive");
  }
  for (const BitVector& v : vectors) {
    if (v.size() != d) {
      throw std::invalid_argument("gadget: vectors must share one length");
    }
    for (int bit : v) {
      if (bit != 0 && bit != 1) {
        throw std::invalid_argument("gadget: vector entries must be 0 or 1");
      }
    }
  }
  return d;
}

}  // namespace

std::pair<TimeSeries, TimeSeries> continuous_gadget(const SetPair& sp) {
  validate_set_pair(sp);
  const double top = 4.0 * static_cast<double>(sp.universe) + 5.0;
  TimeSeries x;
  TimeSeries y;
  x.values.reserve(2 * sp.universe + 2);
  y.values.reserve(2 * sp.universe + 2);
  x.values.push_back(0.0);
  y.values.push_back(0.0);
  for (std::size_t i = 1; i <= sp.universe; ++i) {
    const double base = 4.0 * static_cast<double>(i);
    x.values.push_back(sp.a.count(i) ? base + 4.0 : base);
    x.values.push_back(base);
    y.values.push_back(sp.b.count(i) ? base : base + 3.0);
    y.values.push_back(sp.b.count(i) ? base : base + 1.0);
  }
  x.values.push_back(top);
  y.values.push_back(top);
  return {canonicalize(x), canonicalize(y)};
}

std::pair<PointSequence, PointSequence> discrete_planar_gadget(
    const std::vector<BitVector>& a_vectors,
    const std::vector<BitVector>& b_vectors) {
  const std::size_t d = validate_bit_vectors(a_vectors, "a");
  if (validate_bit_vectors(b_vectors, "b") != d) {
    throw std::invalid_argument("gadget: a- and b-vectors must share one length");
  }
  const std::size_t m = b_vectors.size();

  const Anchors alpha{1.61};
  const Anchors beta{0.61};
  const Point s{0.0, 0.0};
  const Point w{-0.75, 0.0};
  const Point w_prime{0.75, 0.0};
  const Point y1{-0.25, 0.0};
  const Point y2{0.25, 0.0};
  const Point x1{-0.25, -1.0};
  const Point x2{0.25, -1.0};

  PointSequence P;
  P.dim = 2;
  P.points.reserve(3 * d * m + m + 3);
  const std::size_t walk_blocks = d * m / 2;
  const auto append_walk = [&] {
    for (std::size_t i = 0; i < walk_blocks; ++i) {
      P.points.push_back(w);
      P.points.push_back(w_prime);
    }
  };
  append_walk();
  P.points.push_back(x1);
  for (const BitVector& v : b_vectors) {
    P.points.push_back(s);
    append_vector_gadget(v, beta, P.points);
  }
  P.points.push_back(s);
  P.points.push_back(x2);
  append_walk();

  PointSequence Q;
  Q.dim = 2;
  Q.points.reserve(a_vectors.size() * (d + 2));
  for (const BitVector& v : a_vectors) {
    Q.points.push_back(y1);
    append_vector_gadget(v, alpha, Q.points);
    Q.points.push_back(y2);
  }
  return {std::move(P), std::move(Q)};
}

std::pair<PointSequence, PointSequence> highdim_gadget(const SetPair& sp) {
  validate_set_pair(sp);
  if (sp.a.empty() || sp.b.empty()) {
    throw std::invalid_argument("gadget: both sets need at least one element");
  }
  const std::size_t dim = sp.universe + 2;
  const auto point = [dim](double first, double second,
                           std::size_t element = 0) {
    Point p(dim, 0.0);
    p[0] = first;
    p[1] = second;
    if (element > 0) p[element + 1] = 1.0;
    return p;
  };
  const Point w = point(1, 1);
  const Point x1 = point(1, -1);
  const Point s = point(0, 0);
  const Point x2 = point(-1, 1);
  const Point y1 = point(1, 0);
  const Point y2 = point(0, 1);

  PointSequence P;
  P.dim = dim;
  P.points.reserve(2 * sp.b.size() + 5);
  P.points.push_back(w);
  P.points.push_back(x1);
  for (std::size_t element : sp.b) {
    P.points.push_back(s);
    P.points.push_back(point(0, 0, element));
  }
  P.points.push_back(s);
  P.points.push_back(x2);
  P.points.push_back(w);

  PointSequence Q;
  Q.dim = dim;
  Q.points.reserve(3 * sp.a.size());
  for (std::size_t element : sp.a) {
    Q.points.push_back(y1);
    Q.points.push_back(point(1, 1, element));
    Q.points.push_back(y2);
  }
  return {std::move(P), std::move(Q)};
}

SignProjection SignProjection::random(std::size_t target_dim,
                                      std::size_t source_dim,
                                      std::uint64_t seed) {
  if (target_dim == 0 || source_dim == 0) {
    throw std::invalid_argument("projection: dimensions must be positive");
  }
  SignProjection proj(target_dim, source_dim);
  proj.entries_.reserve(target_dim * source_dim);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < target_dim * source_dim; ++i) {
    proj.entries_.push_back((rng() >> 63) ? 1.0 : -1.0);
  }
  return proj;
}

SignProjection SignProjection::identity(std::size_t dim) {
  if (dim == 0) {
    throw std::invalid_argument("projection: dimensions must be positive");
  }
  SignProjection proj(dim, dim);
  proj.entries_.assign(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) proj.entries_[i * dim + i] = 1.0;
  return proj;
}

PointSequence SignProjection::apply(const PointSequence& points) const {
  if (points.dim != source_dim_) {
    throw std::invalid_argument("projection: point dimension mismatch");
  }
  PointSequence out;
  out.dim = target_dim_;
  out.points.reserve(points.points.size());
  for (const Point& p : points.points) {
    if (p.size() != source_dim_) {
      throw std::invalid_argument("projection: point dimension mismatch");
    }
    Point q(target_dim_, 0.0);
    for (std::size_t t = 0; t < target_dim_; ++t) {
      const double* row = entries_.data() + t * source_dim_;
      double sum = 0.0;
      for (std::size_t c = 0; c < source_dim_; ++c) sum += row[c] * p[c];
      q[t] = sum;
    }
    out.points.push_back(std::move(q));
  }
  return out;
}

PointSequence random_sign_projection(const PointSequence& points,
                                     std::size_t target_dim,
                                     std::uint64_t seed) {
  return SignProjection::random(target_dim, points.dim, seed).apply(points);
}

}  // namespace tsann
