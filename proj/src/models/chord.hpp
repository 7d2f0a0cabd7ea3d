#pragma once

// Synthetic plane models: leaves are rational chords on the circle, the
// group acts through exact piecewise-Moebius circle maps, and the planted
// structure (lozenges, non-separated families, scalloped windows, trees)
// is declared alongside the seed leaves. Materialized leaves are the
// orbit of the seeds under short words.
//
// Encoding conventions:
//  - a perfect fit is a shared ideal endpoint of non-interleaved leaves;
//  - consecutive members of a non-separated family share an endpoint,
//    and the bridge leaf of the pair also ends there;
//  - an infinite (Z-indexed) family is stored as a window plus the word
//    translating its index, with the accumulation corners declared.

#include <optional>

#include "../core/circlemap.hpp"
#include "../core/model.hpp"

namespace bfp {

struct PlantedLozenge {
  PlanePtId corner_a = -1;   // positive corner for the designated word
  PlanePtId corner_b = -1;
  LeafId plus_a = -1, minus_a = -1;   // leaves through corner_a
  LeafId plus_b = -1, minus_b = -1;
  PointId fit_ab = -1;  // shared end of plus_a and minus_b
  PointId fit_ba = -1;  // shared end of minus_a and plus_b
  Letters fixing_word;
};

struct NonSepFamily {
  Sign sign = Sign::Plus;
  std::vector<LeafId> members;       // consecutive members share endpoints
  std::vector<LeafId> bridges;       // bridge[i] fits members[i], members[i+1]
  Letters cofixing_word;             // fixes every member
  Letters translating_word;          // shifts the index by +1 (may be empty)
  bool infinite_window = false;
  PointId corner_pos = -1, corner_neg = -1;  // index -> +/- infinity limits
};

struct ScallopedWindow {
  int families[4] = {-1, -1, -1, -1};  // indices into families(): E, N, W, S
  PointId corners[4] = {-1, -1, -1, -1};
  Letters translator_ew;  // fixes E/W families, translates N/S
  Letters translator_ns;  // fixes N/S families, translates E/W
};

struct TreeWindow {
  std::vector<int> lozenges;                 // indices into planted lozenges
  Letters designated_word;                   // fixes every corner
  std::map<PlanePtId, FixSign> corner_signs; // for the designated word
  std::vector<PlanePtId> interior_corners;   // full star materialized
  std::vector<std::vector<int>> lines;       // scalloped members as lozenge runs
  int orbit_id = 0;
};

class ChordModel : public Model {
 public:
  ChordModel(std::string name, std::vector<Generator> gens,
             std::vector<CircleMap> maps, std::unique_ptr<Rewriter> rw);

  std::string type() const override { return "chord"; }
  const std::string& name() const { return name_; }

  const CircleMap& word_map(const Letters& w);

  Membership membership(const Letters& w) override;
  std::vector<FixedPointRecord> fixed_set(const Letters& w) override;
  PlanePtId apply(const Letters& w, PlanePtId p) override;
  LeafId apply_leaf(const Letters& w, LeafId l) override;
  PointId apply_boundary(const Letters& w, PointId xi) override;
  std::pair<int, int> boundary_side_dynamics(const Letters& w, PointId xi) override;

  std::vector<LeafId> stored_leaves() override;
  std::vector<PointId> stored_boundary_points() override;
  std::vector<PointId> special_boundary_points() override;
  bool has_singular_data() const override { return singular_; }
  bool has_nonseparated_data() const override { return !families_.empty(); }

  // structure declarations
  PointId pt(const Rat& pos) { return pd_.intern_point(Position::circle(pos)); }
  LeafId seed_leaf(Sign s, const std::vector<Rat>& ends);
  void declare_lozenge(PlantedLozenge l) { lozenges_.push_back(std::move(l)); }
  void declare_family(NonSepFamily f) { families_.push_back(std::move(f)); }
  void declare_scalloped(ScallopedWindow s) { scalloped_.push_back(std::move(s)); }
  void declare_tree(TreeWindow t) { trees_.push_back(std::move(t)); }
  void declare_singular(PlanePtId center) { singular_ = true; centers_.push_back(center); }
  void declare_special_points(std::vector<PointId> pts) { specials_ = std::move(pts); }

  const std::vector<PlantedLozenge>& planted_lozenges() const { return lozenges_; }
  const std::vector<NonSepFamily>& families() const { return families_; }
  const std::vector<ScallopedWindow>& scalloped_windows() const { return scalloped_; }
  const std::vector<TreeWindow>& tree_windows() const { return trees_; }
  std::vector<TreeWindow>& tree_windows_mut() { return trees_; }
  const std::vector<PlanePtId>& singular_centers() const { return centers_; }
  const std::vector<CircleMap>& generator_maps() const { return gen_maps_; }

  // Materialize images of all seed leaves under words of length <= depth,
  // checking same-sign consistency; throws on a planted violation.
  void materialize(int depth);
  int window_depth() const { return window_depth_; }

  // Validation used by builders and verify_axioms: no same-sign crossing
  // among stored leaves; every declared fit well-formed; no four-leaf
  // cycle of perfect fits (totally ideal quadrilateral).
  void validate(bool reject_ideal_quads = true);

  PlanePtId corner_point(LeafId plus, LeafId minus) {
    return pd_.intern_intersection(plus, minus);
  }

 private:
  std::string name_;
  std::vector<CircleMap> gen_maps_;
  std::map<Letters, CircleMap> map_cache_;
  std::vector<PlantedLozenge> lozenges_;
  std::vector<NonSepFamily> families_;
  std::vector<ScallopedWindow> scalloped_;
  std::vector<TreeWindow> trees_;
  std::vector<PlanePtId> centers_;
  std::vector<PointId> specials_;
  std::vector<LeafId> seeds_;
  bool singular_ = false;
  int window_depth_ = 0;
};

// preset builders
std::unique_ptr<ChordModel> build_lozenge_model();
std::unique_ptr<ChordModel> build_line_model();
std::unique_ptr<ChordModel> build_scalloped_model(int window = 3);
std::unique_ptr<ChordModel> build_tree_model(bool flipped = false);
std::unique_ptr<ChordModel> build_prong3_model();
// order-isomorphic copy of a preset under the rotation x -> x + delta
std::unique_ptr<ChordModel> build_rotated(const std::string& preset, const Rat& delta);
std::unique_ptr<ChordModel> build_preset(const std::string& name);

}  // namespace bfp
