#ifndef BRAIDCX_LINCOMB_HPP
#define BRAIDCX_LINCOMB_HPP

#include <map>

#include "braidcx/rational.hpp"

namespace braidcx {

// Sparse exact linear combination over canonically-keyed basis elements.
// std::map keeps iteration order deterministic.
template <class K>
struct LinComb {
  std::map<K, Rational> terms;

  void add(const K& k, const Rational& c) {
    if (is_zero(c)) return;
    auto it = terms.find(k);
    if (it == terms.end()) {
      terms.emplace(k, c);
    } else {
      it->second += c;
      if (is_zero(it->second)) terms.erase(it);
    }
  }

  void add_scaled(const LinComb& other, const Rational& c) {
    for (const auto& [k, v] : other.terms) add(k, v * c);
  }

  LinComb& operator*=(const Rational& c) {
    if (is_zero(c)) {
      terms.clear();
      return *this;
    }
    for (auto& [k, v] : terms) v *= c;
    return *this;
  }

  bool empty() const { return terms.empty(); }
  size_t size() const { return terms.size(); }

  Rational coeff(const K& k) const {
    auto it = terms.find(k);
    return it == terms.end() ? Rational(0) : it->second;
  }

  bool operator==(const LinComb& o) const { return terms == o.terms; }
};

}  // namespace braidcx

#endif
