#include "plderham/global_form.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace plderham {

GlobalForm::GlobalForm(SimplicialSetPtr host, int degree)
    : host_(std::move(host)), q_(degree) {
  if (!host_) throw std::invalid_argument("GlobalForm: null host");
  if (degree < 0) throw std::invalid_argument("GlobalForm: negative degree");
}

GlobalForm GlobalForm::constant(SimplicialSetPtr host, const Rational& c) {
  GlobalForm w(host, 0);
  if (plderham::is_zero(c)) return w;
  for (SimplexRef s : host->all_simplices())
    w.values_.emplace(s, PolyForm::constant(s.dim, c));
  return w;
}

PolyForm GlobalForm::value_at(SimplexRef s) const {
  if (!host_->valid_ref(s)) throw std::out_of_range("value_at: bad ref");
  auto it = values_.find(s);
  return it == values_.end() ? PolyForm(s.dim, q_) : it->second;
}

PolyForm GlobalForm::value_at_ptr(const SimplexPtr& x) const {
  PolyForm v = value_at(x.base);
  for (int j : x.word) v = v.degeneracy(j);
  return v;
}

void GlobalForm::set_value(SimplexRef s, PolyForm w) {
  if (!host_->valid_ref(s)) throw std::out_of_range("set_value: bad ref");
  if (w.simplex_dim() != s.dim || w.degree() != q_)
    throw std::invalid_argument("set_value: form shape mismatch");
  if (w.is_zero())
    values_.erase(s);
  else
    values_.insert_or_assign(s, std::move(w));
}

int GlobalForm::max_coeff_degree() const {
  int d = -1;
  for (const auto& [s, w] : values_) d = std::max(d, w.max_coeff_degree());
  return d;
}

void GlobalForm::check_host(const GlobalForm& o) const {
  if (host_ != o.host_) throw std::invalid_argument("GlobalForm host mismatch");
}

GlobalForm GlobalForm::operator+(const GlobalForm& o) const {
  check_host(o);
  if (q_ != o.q_) throw std::invalid_argument("GlobalForm degree mismatch");
  GlobalForm r = *this;
  for (const auto& [s, w] : o.values_) r.set_value(s, r.value_at(s) + w);
  return r;
}

GlobalForm GlobalForm::operator-(const GlobalForm& o) const { return *this + (-o); }

GlobalForm GlobalForm::operator-() const { return scaled(Rational(-1)); }

GlobalForm GlobalForm::scaled(const Rational& c) const {
  GlobalForm r(host_, q_);
  if (plderham::is_zero(c)) return r;
  for (const auto& [s, w] : values_) r.values_.emplace(s, w.scaled(c));
  return r;
}

GlobalForm GlobalForm::wedge(const GlobalForm& o) const {
  check_host(o);
  GlobalForm r(host_, q_ + o.q_);
  for (const auto& [s, w] : values_) {
    auto it = o.values_.find(s);
    if (it == o.values_.end()) continue;
    PolyForm prod = w.wedge(it->second);
    if (!prod.is_zero()) r.values_.emplace(s, std::move(prod));
  }
  return r;
}

GlobalForm GlobalForm::d() const {
  GlobalForm r(host_, q_ + 1);
  for (const auto& [s, w] : values_) {
    PolyForm dw = w.d();
    if (!dw.is_zero()) r.values_.emplace(s, std::move(dw));
  }
  return r;
}

std::vector<std::string> GlobalForm::validate() const {
  std::vector<std::string> issues;
  for (int n = 1; n <= host_->max_dim(); ++n) {
    for (int i = 0; i < host_->count(n); ++i) {
      SimplexRef s{n, i};
      PolyForm v = value_at(s);
      for (int k = 0; k <= n; ++k) {
        if (v.face(k) != value_at_ptr(host_->face_entry(s, k))) {
          issues.push_back("face incompatibility at simplex (" + std::to_string(n) +
                           "," + std::to_string(i) + "), face " + std::to_string(k));
        }
      }
    }
  }
  return issues;
}

bool GlobalForm::vanishes_on(const SubSet& k) const {
  for (const auto& [s, w] : values_)
    if (k.contains(s)) return false;
  return true;
}

GlobalForm GlobalForm::restrict_to(const SubComplex& sc) const {
  if (sc.domain.host() != host_)
    throw std::invalid_argument("restrict_to: subcomplex of a different host");
  GlobalForm r(sc.space, q_);
  for (const auto& [s, w] : values_) {
    auto sub = sc.sub_ref(s);
    if (sub) r.values_.emplace(*sub, w);
  }
  return r;
}

GlobalForm GlobalForm::pullback(const SimplicialMap& f) const {
  if (f.target() != host_) throw std::invalid_argument("pullback: target mismatch");
  GlobalForm r(f.source(), q_);
  for (SimplexRef s : f.source()->all_simplices()) {
    PolyForm v = value_at_ptr(f.image(s));
    if (!v.is_zero()) r.values_.emplace(s, std::move(v));
  }
  return r;
}

bool GlobalForm::operator==(const GlobalForm& o) const {
  return host_ == o.host_ && q_ == o.q_ && values_ == o.values_;
}

GlobalForm pullback_compact(const GlobalForm& w, const SimplicialMap& f,
                            const ProperReport& properness) {
  if (!properness.proper)
    throw std::invalid_argument(
        "pullback_compact: hypothesis violated: f is not proper (" +
        properness.detail + ")");
  return w.pullback(f);
}

SupportResult support(const GlobalForm& w) {
  std::vector<SimplexRef> nonzero;
  for (const auto& [s, v] : w.values()) nonzero.push_back(s);
  SupportResult out{generated_subset(w.host(), nonzero), true, -1};
  return out;
}

SupportResult support_truncated(const GlobalForm& w, const Exhaustion& ex, int level) {
  SupportResult out = support(w);
  out.truncation = level;
  // Frontier: simplices of level(n) that gain cofaces in level(n+1).
  SimplicialSetPtr cur = ex.level(level);
  SimplicialSetPtr next = ex.level(level + 1);
  if (w.host()->total_count() != cur->total_count())
    throw std::invalid_argument("support_truncated: form does not live on level(n)");
  SubSet frontier(w.host());
  for (int d = 1; d <= next->max_dim(); ++d) {
    for (int i = 0; i < next->count(d); ++i) {
      bool is_new = d > cur->max_dim() || i >= cur->count(d);
      if (!is_new) continue;
      for (int k = 0; k <= d; ++k) {
        SimplexRef b = next->face_entry({d, i}, k).base;
        if (b.dim <= cur->max_dim() && b.index < cur->count(b.dim))
          frontier.insert(b);
      }
    }
  }
  for (SimplexRef s : out.support.members())
    if (frontier.contains(s)) {
      out.compact = false;
      break;
    }
  return out;
}

}  // namespace plderham
