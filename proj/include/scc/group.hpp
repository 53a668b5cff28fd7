#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "scc/cones.hpp"
#include "scc/core.hpp"
#include "scc/pieces.hpp"

namespace scc {

class NotSmallCancellation : public Error {
 public:
  using Error::Error;
};
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};
class OutOfCertifiedRegion : public Error {
 public:
  using Error::Error;
};

struct FactorMatch {
  size_t start = 0;
  size_t length = 0;
  size_t member = 0;  // member id in the symmetrized closure
  size_t cycle = 0;
  size_t offset = 0;  // member = rotation of the cycle word by offset
};

class DehnMachine {
 public:
  // Uses lambda if given, else the presentation target when at most 1/6, else 1/6.
  // Throws NotSmallCancellation unless C'(lambda) holds with lambda <= 1/6.
  explicit DehnMachine(const Presentation& p, std::optional<Rational> lambda = std::nullopt);

  const Presentation& presentation() const { return pres_; }
  const SymmetrizedClosure& closure() const { return closure_; }
  Rational lambda() const { return lambda_; }

  // Leftmost-longest factor that is a prefix of a member m with length > (1 - 3 lambda)|m|.
  std::optional<FactorMatch> greendlinger_factor(const Word& w) const;
  Word normalize(const Word& w) const;
  bool is_trivial(const Word& w) const { return normalize(free_reduce(w)).empty(); }
  bool equal(const Word& a, const Word& b) const { return is_trivial(concat(invert(a), b)); }

  // Free reduction, then replace any factor u of a member u t with |u| > |u t|/2 by t^-1
  // (at exactly half when t^-1 is shortlex smaller), until none is left.
  Word canonical(const Word& w) const;
  // Elements having a representative of at most this length have a single canonical form.
  size_t canonical_safe_length() const { return h_safe_; }

  // Abelianization reduced modulo the relator lattice, with the images under a few homomorphisms
  // onto permutation groups of degree 5 to 8 found by search on first use. Equal elements share a key.
  std::string invariant_key(const Word& w) const;

 private:
  struct Quotients;
  struct Table {
    std::vector<size_t> lengths;  // distinct probe lengths
    std::unordered_map<uint64_t, std::vector<std::pair<size_t, size_t>>> probes;  // (len, hash) -> (cycle, offset)
  };
  Table make_table(bool half) const;
  template <class Accept>
  std::optional<FactorMatch> find(const Table& t, const Word& w, Accept accept) const;
  Letter member_letter(size_t cycle, size_t offset, size_t j) const;

  Presentation pres_;
  SymmetrizedClosure closure_;
  Rational lambda_;
  std::vector<uint32_t> longest_;
  size_t h_safe_ = SIZE_MAX;
  Table dehn_;
  Table half_;
  std::shared_ptr<Quotients> quotients_;
};

std::optional<FactorMatch> greendlinger_factor(const DehnMachine& m, const Word& w);
Word dehn_normalize(const DehnMachine& m, const Word& w);

// Exponent sum per generator.
std::vector<int64_t> abelianize(const Word& w, size_t rank);

// S together with the words of X_i for i <= N, each with its inverse, sorted shortlex.
std::vector<Word> generating_words(const Presentation& p, const PieceIndex& idx, const GenSetSpec& spec, size_t n_relators);
std::vector<Word> letter_generators(size_t rank);

struct BallOptions {
  size_t vertex_cap = 6'000'000;
};

// Ball of given radius about the identity, vertices keyed by canonical form.
class TruncatedBall {
 public:
  TruncatedBall() = default;
  TruncatedBall(TruncatedBall&&) = default;
  TruncatedBall& operator=(TruncatedBall&&) = default;
  TruncatedBall(const TruncatedBall&) = delete;  // keys_ points into index_
  TruncatedBall& operator=(const TruncatedBall&) = delete;

  const Presentation& presentation() const { return dehn_->presentation(); }
  const DehnMachine& dehn() const { return *dehn_; }
  const std::string& metric() const { return metric_; }
  size_t truncation() const { return truncation_; }
  size_t radius() const { return radius_; }
  const std::vector<Word>& generators() const { return generators_; }

  size_t size() const { return keys_.size(); }
  Word vertex(size_t id) const;
  uint32_t depth(size_t id) const { return depth_[id]; }
  const std::vector<size_t>& layer_sizes() const { return layers_; }
  // generator indices along the BFS tree path from the identity
  std::vector<uint32_t> tree_path(size_t id) const;

  std::optional<size_t> find(const Word& g) const;
  // |g|_X when g lies in the ball
  std::optional<uint32_t> norm(const Word& g) const;
  // d(u, v) = |u^-1 v|, certified when u^-1 v lies in the ball
  std::optional<uint32_t> distance(const Word& u, const Word& v) const;
  size_t fallback_lookups() const { return fallback_lookups_; }

  friend TruncatedBall build_ball(const Presentation& p, const std::vector<Word>& generators, const std::string& metric,
                                  size_t n_relators, size_t radius, BallOptions options);

 private:
  std::string key(const Word& canonical) const;
  std::optional<size_t> lookup(const Word& canonical) const;

  std::shared_ptr<DehnMachine> dehn_;
  std::string metric_;
  size_t truncation_ = 0;
  size_t radius_ = 0;
  std::vector<Word> generators_;
  std::unordered_map<std::string, uint32_t> index_;
  std::vector<const std::string*> keys_;
  std::vector<uint8_t> depth_;
  std::vector<uint32_t> parent_;
  std::vector<uint16_t> parent_gen_;
  std::vector<size_t> layers_;
  std::unordered_map<std::string, std::vector<uint32_t>> buckets_;  // long keys by DehnMachine::invariant_key
  mutable size_t fallback_lookups_ = 0;
};

TruncatedBall build_ball(const Presentation& p, const std::vector<Word>& generators, const std::string& metric,
                         size_t n_relators, size_t radius, BallOptions options = {});
// S metric on the first n_relators relators.
TruncatedBall build_ball(const Presentation& p, size_t n_relators, size_t radius, BallOptions options = {});
// X metric given by spec.
TruncatedBall build_ball(const Presentation& p, const GenSetSpec& spec, size_t n_relators, size_t radius,
                         BallOptions options = {});

struct Geodesic {
  std::vector<Word> vertices;       // canonical forms from u to v
  std::vector<uint32_t> generators;  // indices into the ball's generator list
  uint32_t length = 0;
};

// Shortest path, lexicographically least in generator order among those found by the BFS tree.
// Throws OutOfCertifiedRegion when u^-1 v is outside the ball.
Geodesic geodesic(const TruncatedBall& b, const Word& u, const Word& v);

}  // namespace scc
