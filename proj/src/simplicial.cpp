#include "plderham/simplicial.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace plderham {

std::vector<int> word_push_outer(std::vector<int> word, int m) {
  // s_m ∘ s_j = s_{j+1} ∘ s_m for j >= m, so m slots in front of the first
  // element >= m and everything from there on shifts up by one.
  auto pos = std::lower_bound(word.begin(), word.end(), m);
  for (auto it = pos; it != word.end(); ++it) *it += 1;
  word.insert(pos, m);
  return word;
}

namespace {

// Compose words: apply `inner` first, then `outer` (both canonical).
std::vector<int> word_compose(const std::vector<int>& outer, std::vector<int> inner) {
  for (int m : outer) inner = word_push_outer(std::move(inner), m);
  return inner;
}

}  // namespace

SimplexRef SimplicialSet::Builder::add_simplex(int dim, std::vector<SimplexPtr> faces,
                                               std::string label) {
  if (dim < 0) throw std::invalid_argument("add_simplex: negative dimension");
  if (dim == 0 && !faces.empty())
    throw std::invalid_argument("add_simplex: vertex with faces");
  if (dim >= 1 && static_cast<int>(faces.size()) != dim + 1)
    throw std::invalid_argument("add_simplex: expected dim+1 faces");
  if (static_cast<int>(faces_.size()) <= dim) {
    faces_.resize(dim + 1);
    labels_.resize(dim + 1);
  }
  faces_[dim].push_back(std::move(faces));
  labels_[dim].push_back(std::move(label));
  return {dim, static_cast<int>(faces_[dim].size()) - 1};
}

SimplexRef SimplicialSet::Builder::add_vertex(std::string label) {
  return add_simplex(0, {}, std::move(label));
}

SimplicialSetPtr SimplicialSet::Builder::build_unchecked() const {
  auto s = std::make_shared<SimplicialSet>();
  s->faces_ = faces_;
  s->labels_ = labels_;
  return s;
}

SimplicialSetPtr SimplicialSet::Builder::build() const {
  auto s = build_unchecked();
  auto issues = s->validate();
  if (!issues.empty()) {
    std::ostringstream os;
    os << "invalid simplicial set:";
    for (const auto& line : issues) os << "\n  " << line;
    throw std::invalid_argument(os.str());
  }
  return s;
}

int SimplicialSet::count(int dim) const {
  if (dim < 0 || dim > max_dim()) return 0;
  return static_cast<int>(faces_[dim].size());
}

int SimplicialSet::total_count() const {
  int n = 0;
  for (int d = 0; d <= max_dim(); ++d) n += count(d);
  return n;
}

bool SimplicialSet::valid_ref(SimplexRef s) const {
  return s.dim >= 0 && s.dim <= max_dim() && s.index >= 0 && s.index < count(s.dim);
}

const SimplexPtr& SimplicialSet::face_entry(SimplexRef s, int i) const {
  if (!valid_ref(s)) throw std::out_of_range("face_entry: bad ref");
  if (s.dim == 0) throw std::out_of_range("face_entry: vertex has no faces");
  if (i < 0 || i > s.dim) throw std::out_of_range("face_entry: bad face index");
  return faces_[s.dim][s.index][i];
}

const std::string& SimplicialSet::label(SimplexRef s) const {
  if (!valid_ref(s)) throw std::out_of_range("label: bad ref");
  return labels_[s.dim][s.index];
}

std::optional<SimplexRef> SimplicialSet::find_label(const std::string& label) const {
  if (label.empty()) return std::nullopt;
  for (int d = 0; d <= max_dim(); ++d)
    for (int i = 0; i < count(d); ++i)
      if (labels_[d][i] == label) return SimplexRef{d, i};
  return std::nullopt;
}

SimplexPtr SimplicialSet::face(const SimplexPtr& x, int i) const {
  if (i < 0 || i > x.dim()) throw std::out_of_range("face: bad index");
  // Walk ∂_i inward through the degeneracy word, outermost letter first.
  std::vector<int> word = x.word;
  int fi = i;
  for (int t = static_cast<int>(word.size()) - 1; t >= 0; --t) {
    int j = word[t];
    if (fi == j || fi == j + 1) {
      word.erase(word.begin() + t);
      return {x.base, word};
    }
    if (fi < j) {
      word[t] = j - 1;
    } else {
      fi -= 1;
    }
  }
  const SimplexPtr& f = face_entry(x.base, fi);
  return {f.base, word_compose(word, f.word)};
}

SimplexPtr SimplicialSet::degenerate(const SimplexPtr& x, int j) const {
  if (j < 0 || j > x.dim()) throw std::out_of_range("degenerate: bad index");
  return {x.base, word_push_outer(x.word, j)};
}

std::vector<SimplexRef> SimplicialSet::all_simplices() const {
  std::vector<SimplexRef> out;
  for (int d = 0; d <= max_dim(); ++d)
    for (int i = 0; i < count(d); ++i) out.push_back({d, i});
  return out;
}

std::vector<std::string> SimplicialSet::validate() const {
  std::vector<std::string> issues;
  auto ref_str = [](SimplexRef s) {
    return "(" + std::to_string(s.dim) + "," + std::to_string(s.index) + ")";
  };
  for (int n = 1; n <= max_dim(); ++n) {
    for (int i = 0; i < count(n); ++i) {
      SimplexRef s{n, i};
      if (static_cast<int>(faces_[n][i].size()) != n + 1) {
        issues.push_back("simplex " + ref_str(s) + ": wrong face count");
        continue;
      }
      for (int k = 0; k <= n; ++k) {
        const SimplexPtr& f = faces_[n][i][k];
        if (!valid_ref(f.base)) {
          issues.push_back("simplex " + ref_str(s) + ": face " + std::to_string(k) +
                           " has invalid target");
          continue;
        }
        if (f.dim() != n - 1) {
          issues.push_back("simplex " + ref_str(s) + ": face " + std::to_string(k) +
                           " has wrong dimension");
          continue;
        }
        // Word letters must be strictly increasing and applicable.
        int d = f.base.dim;
        int prev = -1;
        for (int w : f.word) {
          if (w <= prev || w < 0 || w > d) {
            issues.push_back("simplex " + ref_str(s) + ": face " + std::to_string(k) +
                             " has malformed degeneracy word");
            break;
          }
          prev = w;
          ++d;
        }
      }
    }
  }
  if (!issues.empty()) return issues;  // identities need structural sanity

  for (int n = 2; n <= max_dim(); ++n) {
    for (int idx = 0; idx < count(n); ++idx) {
      SimplexPtr s{{n, idx}, {}};
      for (int j = 1; j <= n; ++j) {
        for (int i = 0; i < j; ++i) {
          SimplexPtr a = face(face(s, j), i);
          SimplexPtr b = face(face(s, i), j - 1);
          if (a != b) {
            issues.push_back("simplicial identity failed at simplex (" +
                             std::to_string(n) + "," + std::to_string(idx) +
                             "), pair (i,j) = (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
          }
        }
      }
    }
  }
  return issues;
}

SubSet::SubSet(SimplicialSetPtr host) : host_(std::move(host)) {
  flags_.resize(host_->max_dim() + 1);
  for (int d = 0; d <= host_->max_dim(); ++d) flags_[d].assign(host_->count(d), 0);
}

SubSet SubSet::full(SimplicialSetPtr host) {
  SubSet s(std::move(host));
  for (auto& level : s.flags_) std::fill(level.begin(), level.end(), 1);
  return s;
}

bool SubSet::contains(SimplexRef s) const {
  if (!host_->valid_ref(s)) throw std::out_of_range("SubSet::contains: bad ref");
  return flags_[s.dim][s.index] != 0;
}

void SubSet::insert(SimplexRef s) {
  if (!host_->valid_ref(s)) throw std::out_of_range("SubSet::insert: bad ref");
  flags_[s.dim][s.index] = 1;
}

int SubSet::size() const {
  int n = 0;
  for (const auto& level : flags_)
    for (char f : level) n += f ? 1 : 0;
  return n;
}

std::vector<SimplexRef> SubSet::members() const {
  std::vector<SimplexRef> out;
  for (int d = 0; d < static_cast<int>(flags_.size()); ++d)
    for (int i = 0; i < static_cast<int>(flags_[d].size()); ++i)
      if (flags_[d][i]) out.push_back({d, i});
  return out;
}

bool SubSet::is_face_closed() const {
  for (int d = 1; d < static_cast<int>(flags_.size()); ++d)
    for (int i = 0; i < static_cast<int>(flags_[d].size()); ++i) {
      if (!flags_[d][i]) continue;
      for (int k = 0; k <= d; ++k)
        if (!contains(host_->face_entry({d, i}, k).base)) return false;
    }
  return true;
}

void SubSet::check_same_host(const SubSet& o) const {
  if (host_ != o.host_) throw std::invalid_argument("SubSet host mismatch");
}

SubSet SubSet::set_union(const SubSet& o) const {
  check_same_host(o);
  SubSet r = *this;
  for (size_t d = 0; d < flags_.size(); ++d)
    for (size_t i = 0; i < flags_[d].size(); ++i)
      if (o.flags_[d][i]) r.flags_[d][i] = 1;
  return r;
}

SubSet SubSet::set_intersection(const SubSet& o) const {
  check_same_host(o);
  SubSet r(host_);
  for (size_t d = 0; d < flags_.size(); ++d)
    for (size_t i = 0; i < flags_[d].size(); ++i)
      if (flags_[d][i] && o.flags_[d][i]) r.flags_[d][i] = 1;
  return r;
}

std::vector<SimplexRef> SubSet::member_difference(const SubSet& o) const {
  check_same_host(o);
  std::vector<SimplexRef> out;
  for (int d = 0; d < static_cast<int>(flags_.size()); ++d)
    for (int i = 0; i < static_cast<int>(flags_[d].size()); ++i)
      if (flags_[d][i] && !o.flags_[d][i]) out.push_back({d, i});
  return out;
}

bool SubSet::subset_of(const SubSet& o) const {
  check_same_host(o);
  for (size_t d = 0; d < flags_.size(); ++d)
    for (size_t i = 0; i < flags_[d].size(); ++i)
      if (flags_[d][i] && !o.flags_[d][i]) return false;
  return true;
}

bool SubSet::operator==(const SubSet& o) const {
  return host_ == o.host_ && flags_ == o.flags_;
}

SimplicialMap::SimplicialMap(SimplicialSetPtr source, SimplicialSetPtr target,
                             std::vector<std::vector<SimplexPtr>> images)
    : src_(std::move(source)), dst_(std::move(target)), images_(std::move(images)) {
  auto issues = validate();
  if (!issues.empty()) {
    std::ostringstream os;
    os << "invalid simplicial map:";
    for (const auto& line : issues) os << "\n  " << line;
    throw std::invalid_argument(os.str());
  }
}

const SimplexPtr& SimplicialMap::image(SimplexRef s) const {
  if (!src_->valid_ref(s)) throw std::out_of_range("image: bad ref");
  return images_[s.dim][s.index];
}

SimplexPtr SimplicialMap::image_ptr(const SimplexPtr& x) const {
  const SimplexPtr& base_img = image(x.base);
  return {base_img.base, word_compose(x.word, base_img.word)};
}

bool SimplicialMap::is_inclusion() const {
  std::set<SimplexRef> seen;
  for (int d = 0; d < static_cast<int>(images_.size()); ++d) {
    for (const auto& img : images_[d]) {
      if (img.degenerate()) return false;
      if (!seen.insert(img.base).second) return false;
    }
  }
  return true;
}

std::vector<std::string> SimplicialMap::validate() const {
  std::vector<std::string> issues;
  if (static_cast<int>(images_.size()) != src_->max_dim() + 1) {
    issues.push_back("image table has wrong dimension count");
    return issues;
  }
  for (int d = 0; d <= src_->max_dim(); ++d) {
    if (static_cast<int>(images_[d].size()) != src_->count(d)) {
      issues.push_back("image table at dimension " + std::to_string(d) +
                       " has wrong size");
      return issues;
    }
    for (int i = 0; i < src_->count(d); ++i) {
      const SimplexPtr& img = images_[d][i];
      if (!dst_->valid_ref(img.base) || img.dim() != d)
        issues.push_back("image of (" + std::to_string(d) + "," + std::to_string(i) +
                         ") has wrong shape");
    }
  }
  if (!issues.empty()) return issues;
  for (int d = 1; d <= src_->max_dim(); ++d) {
    for (int i = 0; i < src_->count(d); ++i) {
      SimplexPtr s{{d, i}, {}};
      for (int k = 0; k <= d; ++k) {
        SimplexPtr lhs = image_ptr(src_->face(s, k));
        SimplexPtr rhs = dst_->face(image_ptr(s), k);
        if (lhs != rhs)
          issues.push_back("map does not commute with face " + std::to_string(k) +
                           " of (" + std::to_string(d) + "," + std::to_string(i) + ")");
      }
    }
  }
  return issues;
}

SimplicialMap SimplicialMap::identity(SimplicialSetPtr x) {
  std::vector<std::vector<SimplexPtr>> images(x->max_dim() + 1);
  for (int d = 0; d <= x->max_dim(); ++d)
    for (int i = 0; i < x->count(d); ++i) images[d].push_back({{d, i}, {}});
  return SimplicialMap(x, x, std::move(images));
}

SimplicialMap SimplicialMap::compose(const SimplicialMap& inner) const {
  if (inner.dst_ != src_) throw std::invalid_argument("compose: middle space mismatch");
  std::vector<std::vector<SimplexPtr>> images(inner.src_->max_dim() + 1);
  for (int d = 0; d <= inner.src_->max_dim(); ++d)
    for (int i = 0; i < inner.src_->count(d); ++i)
      images[d].push_back(image_ptr(inner.images_[d][i]));
  return SimplicialMap(inner.src_, dst_, std::move(images));
}

SubSet generated_subset(const SimplicialSetPtr& x, const std::vector<SimplexRef>& gens) {
  SubSet out(x);
  std::vector<SimplexRef> stack;
  for (SimplexRef s : gens) {
    if (!x->valid_ref(s)) throw std::out_of_range("generated_subset: unknown SimplexRef");
    if (!out.contains(s)) {
      out.insert(s);
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    SimplexRef s = stack.back();
    stack.pop_back();
    for (int i = 0; i <= s.dim && s.dim > 0; ++i) {
      SimplexRef t = x->face_entry(s, i).base;
      if (!out.contains(t)) {
        out.insert(t);
        stack.push_back(t);
      }
    }
  }
  return out;
}

SubSet minimal_neighborhood(const SubSet& k) {
  const SimplicialSetPtr& x = k.host();
  // touches[d][i]: some iterated face of (d,i) (including itself) lies in K.
  std::vector<std::vector<char>> touches(x->max_dim() + 1);
  std::vector<SimplexRef> hits;
  for (int d = 0; d <= x->max_dim(); ++d) {
    touches[d].assign(x->count(d), 0);
    for (int i = 0; i < x->count(d); ++i) {
      bool t = k.contains({d, i});
      for (int f = 0; f <= d && !t && d > 0; ++f) {
        SimplexRef b = x->face_entry({d, i}, f).base;
        t = touches[b.dim][b.index] != 0;
      }
      touches[d][i] = t ? 1 : 0;
      if (t) hits.push_back({d, i});
    }
  }
  return generated_subset(x, hits);
}

SubSet complement_closure(const SubSet& k) {
  const SimplicialSetPtr& x = k.host();
  std::vector<SimplexRef> outside;
  for (SimplexRef s : x->all_simplices())
    if (!k.contains(s)) outside.push_back(s);
  return generated_subset(x, outside);
}

std::optional<SimplexRef> SubComplex::sub_ref(SimplexRef host) const {
  if (host.dim >= static_cast<int>(to_sub.size())) return std::nullopt;
  int idx = to_sub[host.dim][host.index];
  if (idx < 0) return std::nullopt;
  return SimplexRef{host.dim, idx};
}

SimplicialMap SubComplex::inclusion() const {
  std::vector<std::vector<SimplexPtr>> images(space->max_dim() + 1);
  for (int d = 0; d <= space->max_dim(); ++d)
    for (int i = 0; i < space->count(d); ++i) images[d].push_back({to_host[d][i], {}});
  return SimplicialMap(space, domain.host(), std::move(images));
}

SubComplex sub_complex(const SubSet& k) {
  if (!k.is_face_closed())
    throw std::invalid_argument("sub_complex: subset is not face-closed");
  const SimplicialSetPtr& x = k.host();
  SubComplex out;
  out.domain = k;
  out.to_sub.resize(x->max_dim() + 1);
  out.to_host.resize(x->max_dim() + 1);
  for (int d = 0; d <= x->max_dim(); ++d) out.to_sub[d].assign(x->count(d), -1);

  SimplicialSet::Builder b;
  for (int d = 0; d <= x->max_dim(); ++d) {
    for (int i = 0; i < x->count(d); ++i) {
      if (!k.contains({d, i})) continue;
      std::vector<SimplexPtr> faces;
      for (int f = 0; f <= d && d > 0; ++f) {
        const SimplexPtr& e = x->face_entry({d, i}, f);
        faces.push_back({{e.base.dim, out.to_sub[e.base.dim][e.base.index]}, e.word});
      }
      SimplexRef sub = b.add_simplex(d, std::move(faces), x->label({d, i}));
      out.to_sub[d][i] = sub.index;
      if (static_cast<int>(out.to_host.size()) <= d) out.to_host.resize(d + 1);
      out.to_host[d].push_back({d, i});
    }
  }
  out.space = b.build();
  return out;
}

PushoutResult pushout(const SimplicialMap& f, const SimplicialMap& inc) {
  if (f.source() != inc.source())
    throw std::invalid_argument("pushout: f and ι must share their source");
  if (!inc.is_inclusion())
    throw std::invalid_argument("pushout: ι is not an inclusion");
  const SimplicialSetPtr& w = f.source();
  const SimplicialSetPtr& u = f.target();
  const SimplicialSetPtr& v = inc.target();

  // Which simplices of V are identified along W, and with what.
  std::vector<std::vector<int>> from_w(v->max_dim() + 1);
  for (int d = 0; d <= v->max_dim(); ++d) from_w[d].assign(v->count(d), -1);
  for (int d = 0; d <= w->max_dim(); ++d)
    for (int i = 0; i < w->count(d); ++i) {
      SimplexRef img = inc.image({d, i}).base;
      from_w[img.dim][img.index] = i;
    }

  SimplicialSet::Builder b;
  // U embeds as a prefix, dimension by dimension; V \ ι(W) follows.
  std::vector<std::vector<int>> u_to_x(u->max_dim() + 1), v_to_x(v->max_dim() + 1);
  int top = std::max(u->max_dim(), v->max_dim());
  for (int d = 0; d <= top; ++d) {
    if (d <= u->max_dim()) u_to_x[d].assign(u->count(d), -1);
    if (d <= v->max_dim()) v_to_x[d].assign(v->count(d), -1);
  }

  // Image of a V-simplex in X, in normal form.
  auto v_ptr_in_x = [&](const SimplexPtr& vp) -> SimplexPtr {
    SimplexRef base = vp.base;
    if (from_w[base.dim][base.index] >= 0) {
      const SimplexPtr& fu = f.image({base.dim, from_w[base.dim][base.index]});
      SimplexRef xb{fu.base.dim, u_to_x[fu.base.dim][fu.base.index]};
      return {xb, word_compose(vp.word, fu.word)};
    }
    return {{base.dim, v_to_x[base.dim][base.index]}, vp.word};
  };

  for (int d = 0; d <= top; ++d) {
    if (d <= u->max_dim()) {
      for (int i = 0; i < u->count(d); ++i) {
        std::vector<SimplexPtr> faces;
        for (int k = 0; k <= d && d > 0; ++k) {
          const SimplexPtr& e = u->face_entry({d, i}, k);
          faces.push_back({{e.base.dim, u_to_x[e.base.dim][e.base.index]}, e.word});
        }
        u_to_x[d][i] = b.add_simplex(d, std::move(faces), u->label({d, i})).index;
      }
    }
    if (d <= v->max_dim()) {
      for (int i = 0; i < v->count(d); ++i) {
        if (from_w[d][i] >= 0) continue;  // identified with a U-simplex
        std::vector<SimplexPtr> faces;
        for (int k = 0; k <= d && d > 0; ++k)
          faces.push_back(v_ptr_in_x(v->face_entry({d, i}, k)));
        v_to_x[d][i] = b.add_simplex(d, std::move(faces), v->label({d, i})).index;
      }
    }
  }
  SimplicialSetPtr x = b.build();

  std::vector<std::vector<SimplexPtr>> g_images(v->max_dim() + 1);
  for (int d = 0; d <= v->max_dim(); ++d)
    for (int i = 0; i < v->count(d); ++i) g_images[d].push_back(v_ptr_in_x({{d, i}, {}}));
  std::vector<std::vector<SimplexPtr>> h_images(u->max_dim() + 1);
  for (int d = 0; d <= u->max_dim(); ++d)
    for (int i = 0; i < u->count(d); ++i)
      h_images[d].push_back({{d, u_to_x[d][i]}, {}});

  return {x, SimplicialMap(v, x, std::move(g_images)),
          SimplicialMap(u, x, std::move(h_images))};
}

namespace {

// Preimage sizes of ⟨σ⟩ for every non-degenerate target simplex.
std::map<SimplexRef, int> preimage_counts(const SimplicialMap& f) {
  const SimplicialSetPtr& x = f.source();
  const SimplicialSetPtr& y = f.target();
  std::map<SimplexRef, int> counts;
  for (SimplexRef t : y->all_simplices()) {
    SubSet gen = generated_subset(y, {t});
    int n = 0;
    for (SimplexRef s : x->all_simplices())
      if (gen.contains(f.image(s).base)) ++n;
    counts[t] = n;
  }
  return counts;
}

}  // namespace

ProperReport is_proper(const SimplicialMap& f) {
  // A finite source makes every preimage finite; still run the Remark's
  // criterion so the counts are available.
  auto counts = preimage_counts(f);
  (void)counts;
  return {true, true, -1, "finite source"};
}

ProperReport is_proper_truncated(
    const SimplicialMap& f_small, const SimplicialMap& f_big, int level,
    const std::function<SimplexRef(SimplexRef)>& target_in_big) {
  if (f_small.target()->max_dim() > f_big.target()->max_dim())
    throw std::invalid_argument("is_proper_truncated: levels out of order");
  auto small = preimage_counts(f_small);
  auto big = preimage_counts(f_big);
  for (const auto& [t, n] : small) {
    auto it = big.find(target_in_big ? target_in_big(t) : t);
    if (it == big.end()) continue;
    if (it->second != n) {
      return {false, false, level,
              "preimage of simplex (" + std::to_string(t.dim) + "," +
                  std::to_string(t.index) + ") grows between truncations " +
                  std::to_string(level) + " and " + std::to_string(level + 1)};
    }
  }
  return {true, true, level, "preimage counts stable across truncations"};
}

SubSet truncation_subset(const Exhaustion& ex, int n, const SimplicialSetPtr& ambient) {
  if (ex.subset) return ex.subset(n, ambient);
  SimplicialSetPtr level = ex.level(n);
  SubSet out(ambient);
  for (int d = 0; d <= level->max_dim(); ++d) {
    if (d > ambient->max_dim())
      throw std::invalid_argument("truncation_subset: ambient too small");
    if (level->count(d) > ambient->count(d))
      throw std::invalid_argument("truncation_subset: ambient too small");
    for (int i = 0; i < level->count(d); ++i) out.insert({d, i});
  }
  return out;
}

}  // namespace plderham
