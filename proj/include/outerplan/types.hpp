#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace outerplan {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;
using Dart = std::int32_t;
using WalkId = std::int32_t;
using FaceId = std::int32_t;
using NodeId = std::int32_t;

inline constexpr std::int32_t kNone = -1;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// A dart is one side of an edge: dart 2e leaves edges[e].u, dart 2e+1 leaves
// edges[e].v. For a loop the first rotation slot is side 0.
constexpr Dart dart_of(EdgeId e, int side) { return 2 * e + side; }
constexpr EdgeId edge_of(Dart d) { return d >> 1; }
constexpr Dart twin(Dart d) { return d ^ 1; }

/// Malformed embedding input (rotation, face grouping, flags).
class EmbeddingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an algorithm is violated by an otherwise valid input.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested parameter g exceeds what the tree of peels supports: some
/// interior node stores fewer than g vertices.
class InfeasibleParameter : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace math {

/// floor(sqrt(x)) for x >= 0, exact.
constexpr std::int64_t isqrt_floor(std::int64_t x) {
  if (x < 0) throw std::domain_error("isqrt of negative value");
  std::int64_t lo = 0;
  std::int64_t hi = 1;
  while (hi * hi <= x) hi *= 2;
  // invariant: lo*lo <= x < hi*hi
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (mid * mid <= x)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

/// ceil(sqrt(x)) for x >= 0, exact.
constexpr std::int64_t isqrt_ceil(std::int64_t x) {
  std::int64_t r = isqrt_floor(x);
  return r * r == x ? r : r + 1;
}

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return -floor_div(-a, b);
}

}  // namespace math
}  // namespace outerplan
