#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace plderham {

class SimplicialSet;
using SimplicialSetPtr = std::shared_ptr<const SimplicialSet>;

// Reference to a non-degenerate simplex of its host.
struct SimplexRef {
  int dim = -1;
  int index = -1;
  auto operator<=>(const SimplexRef&) const = default;
};

// Eilenberg-Zilber normal form of an arbitrary simplex: a non-degenerate
// base with a degeneracy word. The word [j1 < j2 < ... < jk] is applied
// smallest index first: the simplex is s_{jk}( ... s_{j1}(base) ... ).
struct SimplexPtr {
  SimplexRef base;
  std::vector<int> word;
  int dim() const { return base.dim + static_cast<int>(word.size()); }
  bool degenerate() const { return !word.empty(); }
  auto operator<=>(const SimplexPtr&) const = default;
};

// Canonical form of s_m applied on the outside of an existing word.
std::vector<int> word_push_outer(std::vector<int> word, int m);

// Simplicial set presented by its non-degenerate simplices; every face is
// recorded in normal form. The simplicial identities ∂i∂j = ∂{j-1}∂i (i<j)
// on this data are exactly the condition for the presentation to define a
// simplicial set, so the validator checks them on construction.
class SimplicialSet : public std::enable_shared_from_this<SimplicialSet> {
 public:
  class Builder {
   public:
    // Faces are given for dimensions >= 1 as n+1 pointers of dimension n-1.
    SimplexRef add_simplex(int dim, std::vector<SimplexPtr> faces,
                           std::string label = "");
    SimplexRef add_vertex(std::string label = "");
    SimplicialSetPtr build() const;            // throws on invalid data
    SimplicialSetPtr build_unchecked() const;  // for the `validate` command

   private:
    std::vector<std::vector<std::vector<SimplexPtr>>> faces_;
    std::vector<std::vector<std::string>> labels_;
  };

  int max_dim() const { return static_cast<int>(faces_.size()) - 1; }
  int count(int dim) const;
  int total_count() const;
  bool valid_ref(SimplexRef s) const;
  const SimplexPtr& face_entry(SimplexRef s, int i) const;
  const std::string& label(SimplexRef s) const;
  std::optional<SimplexRef> find_label(const std::string& label) const;

  // Pointer algebra: faces and degeneracies of arbitrary simplices.
  SimplexPtr face(const SimplexPtr& x, int i) const;
  SimplexPtr degenerate(const SimplexPtr& x, int j) const;

  std::vector<SimplexRef> all_simplices() const;  // dim-major, index order
  std::vector<std::string> validate() const;      // empty = valid

 private:
  friend class Builder;
  std::vector<std::vector<std::vector<SimplexPtr>>> faces_;
  std::vector<std::vector<std::string>> labels_;
};

// Face-closed set of non-degenerate simplices of a host.
class SubSet {
 public:
  SubSet() = default;
  explicit SubSet(SimplicialSetPtr host);
  static SubSet full(SimplicialSetPtr host);

  const SimplicialSetPtr& host() const { return host_; }
  bool contains(SimplexRef s) const;
  void insert(SimplexRef s);  // caller is responsible for re-closing
  int size() const;
  bool empty() const { return size() == 0; }
  std::vector<SimplexRef> members() const;  // sorted
  bool is_face_closed() const;

  SubSet set_union(const SubSet& o) const;
  SubSet set_intersection(const SubSet& o) const;
  // Raw member difference; generally not face-closed.
  std::vector<SimplexRef> member_difference(const SubSet& o) const;
  bool subset_of(const SubSet& o) const;

  bool operator==(const SubSet& o) const;

 private:
  void check_same_host(const SubSet& o) const;
  SimplicialSetPtr host_;
  std::vector<std::vector<char>> flags_;
};

// Simplicial map, stored by images of non-degenerate simplices.
class SimplicialMap {
 public:
  SimplicialMap(SimplicialSetPtr source, SimplicialSetPtr target,
                std::vector<std::vector<SimplexPtr>> images);

  const SimplicialSetPtr& source() const { return src_; }
  const SimplicialSetPtr& target() const { return dst_; }
  const SimplexPtr& image(SimplexRef s) const;
  SimplexPtr image_ptr(const SimplexPtr& x) const;

  bool is_inclusion() const;  // degeneracy-free and injective
  std::vector<std::string> validate() const;

  static SimplicialMap identity(SimplicialSetPtr x);
  SimplicialMap compose(const SimplicialMap& inner) const;  // this ∘ inner

 private:
  SimplicialSetPtr src_, dst_;
  std::vector<std::vector<SimplexPtr>> images_;
};

// ---- simplicial_core operations ----

// Smallest face-closed subset containing the given simplices.
SubSet generated_subset(const SimplicialSetPtr& x, const std::vector<SimplexRef>& gens);

// ε(K): generated subset of the simplices having some iterated face in K.
SubSet minimal_neighborhood(const SubSet& k);

// ⟨X \ K⟩.
SubSet complement_closure(const SubSet& k);

// A subset realized as a simplicial set of its own, with the inclusion and
// the index translation in both directions.
struct SubComplex {
  SimplicialSetPtr space;
  SubSet domain;                            // the subset inside the host
  std::vector<std::vector<int>> to_sub;     // host (dim,idx) -> sub idx or -1
  std::vector<std::vector<SimplexRef>> to_host;
  SimplexRef host_ref(SimplexRef sub) const { return to_host[sub.dim][sub.index]; }
  std::optional<SimplexRef> sub_ref(SimplexRef host) const;
  SimplicialMap inclusion() const;
};

SubComplex sub_complex(const SubSet& k);

struct PushoutResult {
  SimplicialSetPtr space;               // X = U ⊔_W V
  SimplicialMap g;                      // V -> X
  SimplicialMap h;                      // U -> X (an inclusion)
};

// Pushout of U <-f- W -ι-> V where ι is an inclusion.
PushoutResult pushout(const SimplicialMap& f, const SimplicialMap& inc);

struct ProperReport {
  bool proper = false;
  // True when the verdict is exact (finite source) or witnessed by two
  // truncation levels with identical preimage counts.
  bool certified = false;
  int truncation = -1;
  std::string detail;
};

// Exact properness check for maps of finite simplicial sets (the Remark's
// criterion: preimages of ⟨σ⟩ are finite for each non-degenerate target σ).
ProperReport is_proper(const SimplicialMap& f);

// Desk-scale properness for exhaustion-backed sources: compare preimage
// counts of the same map at two consecutive truncation levels. When the
// target is not prefix-indexed across levels, pass the ref correspondence
// from the small target into the big one.
ProperReport is_proper_truncated(
    const SimplicialMap& f_small, const SimplicialMap& f_big, int level,
    const std::function<SimplexRef(SimplexRef)>& target_in_big = {});

// Lazily truncated locally finite simplicial set: level(n) are finite
// truncations K_1 ⊂ K_2 ⊂ ... presented prefix-compatibly (simplices keep
// their (dim,index) across levels). `layered` promises that a simplex born
// at level m has all iterated faces born at level >= m-1, which makes
// ε(K_n) ⊆ K_{n+1} automatic.
struct Exhaustion {
  std::function<SimplicialSetPtr(int)> level;
  bool layered = true;
  std::string name;
  // Optional override for families that are not prefix-indexed (for example
  // pushouts of growing truncations): the level-n simplices inside ambient.
  std::function<SubSet(int, const SimplicialSetPtr&)> subset;
};

// The level-n truncation as a SubSet of a (larger) ambient truncation.
SubSet truncation_subset(const Exhaustion& ex, int n, const SimplicialSetPtr& ambient);

}  // namespace plderham
