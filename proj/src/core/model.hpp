#pragma once

// A plane model bundles the combinatorial plane data with a group action:
// generators, a confluent rewriter for the word problem, the action on
// points/leaves/boundary, and exact fixed-point data per word.

#include <memory>

#include "plane.hpp"
#include "words.hpp"

namespace bfp {

enum class FixSign { Positive, Negative, Rotating };
inline const char* fix_sign_str(FixSign s) {
  switch (s) {
    case FixSign::Positive: return "positive";
    case FixSign::Negative: return "negative";
    default: return "rotating";
  }
}

enum class CornerStatus { Corner, NonCorner, Unknown };
inline const char* corner_status_str(CornerStatus c) {
  switch (c) {
    case CornerStatus::Corner: return "corner";
    case CornerStatus::NonCorner: return "non-corner";
    default: return "unknown";
  }
}

struct FixedPointRecord {
  Letters word;
  PlanePtId point = -1;
  FixSign sign = FixSign::Positive;
  CornerStatus corner = CornerStatus::Unknown;
};

enum class Membership { In, Out, Undecided };

class Model {
 public:
  virtual ~Model() = default;
  virtual std::string type() const = 0;

  const std::vector<Generator>& generators() const { return gens_; }
  const Rewriter& rewriter() const { return *rewriter_; }
  PlaneData& plane() { return pd_; }
  const PlaneData& plane() const { return pd_; }
  std::string word_string(const Letters& w) const { return word_str(gens_, w); }
  Letters parse(const std::string& s) const { return parse_word(gens_, s); }

  // Spectrum membership of a single word; identity is never a member.
  virtual Membership membership(const Letters& w) = 0;

  // Every fixed point representable in the model's data; may throw
  // Errc::model_incomplete when a fixed leaf's point is truncated away.
  virtual std::vector<FixedPointRecord> fixed_set(const Letters& w) = 0;

  virtual PlanePtId apply(const Letters& w, PlanePtId p) = 0;
  virtual LeafId apply_leaf(const Letters& w, LeafId l) = 0;
  virtual PointId apply_boundary(const Letters& w, PointId xi) = 0;
  virtual bool boundary_fixes(const Letters& w, PointId xi) {
    return apply_boundary(w, xi) == xi;
  }

  // Displacement signs of nearby boundary points on the (ccw-before,
  // ccw-after) sides of a w-fixed ideal point: +1 = counterclockwise.
  virtual std::pair<int, int> boundary_side_dynamics(const Letters& w, PointId xi) = 0;

  // The materialized leaf window and boundary data detectors run over.
  virtual std::vector<LeafId> stored_leaves() = 0;
  virtual std::vector<PointId> stored_boundary_points() = 0;
  // Ideal points that are not ends of any leaf (trivial: 4, skewed: 2)
  // plus declared accumulation corners of scalloped windows.
  virtual std::vector<PointId> special_boundary_points() = 0;

  virtual bool has_singular_data() const { return false; }
  virtual bool has_nonseparated_data() const { return false; }

 protected:
  std::vector<Generator> gens_;
  std::unique_ptr<Rewriter> rewriter_;
  PlaneData pd_;
};

}  // namespace bfp
