#include "repring/element.hpp"

#include <algorithm>
#include <map>

namespace repring {

Rational Element::coeff(BasisId i) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), i,
      [](const auto& t, BasisId k) { return t.first < k; });
  if (it != terms_.end() && it->first == i) return it->second;
  return Rational(0);
}

void Element::set_coeff(BasisId i, const Rational& c) {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), i,
      [](const auto& t, BasisId k) { return t.first < k; });
  if (it != terms_.end() && it->first == i) {
    if (c == 0)
      terms_.erase(it);
    else
      it->second = c;
  } else if (c != 0) {
    terms_.insert(it, {i, c});
  }
}

void Element::add_term(BasisId i, const Rational& c) {
  if (c == 0) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), i,
      [](const auto& t, BasisId k) { return t.first < k; });
  if (it != terms_.end() && it->first == i) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {i, c});
  }
}

Element& Element::operator+=(const Element& o) {
  if (o.terms_.empty()) return *this;
  std::vector<std::pair<BasisId, Rational>> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Rational s = a->second + b->second;
      if (s != 0) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  Element neg = -o;
  return *this += neg;
}

Element& Element::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [i, v] : terms_) v *= c;
  return *this;
}

bool Element::non_negative() const {
  for (const auto& [i, c] : terms_)
    if (c < 0) return false;
  return true;
}

bool Element::integral() const {
  for (const auto& [i, c] : terms_)
    if (c.get_den() != 1) return false;
  return true;
}

void Element::map_ids(const std::function<BasisId(BasisId)>& f) {
  std::map<BasisId, Rational> acc;
  for (const auto& [i, c] : terms_) acc[f(i)] += c;
  terms_.clear();
  for (auto& [i, c] : acc)
    if (c != 0) terms_.emplace_back(i, std::move(c));
}

void Element::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<BasisId, Rational>> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const auto& t) { return t.second == 0; });
  terms_ = std::move(out);
}

}  // namespace repring
