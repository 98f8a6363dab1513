#include "dmf/biseries.hpp"

#include <algorithm>

#include "dmf/errors.hpp"

namespace dmf {

namespace {

const TPoly kZero{};

int64_t clamp(int64_t p) { return std::min(p, kPrecInf); }

}  // namespace

const TPoly& BiSeries::coeff(int64_t eu, int64_t et) const {
  if (eu >= pu || et >= pt)
    throw DomainError("bivariate coefficient requested beyond precision");
  auto it = c.find({eu, et});
  return it == c.end() ? kZero : it->second;
}

BiSeries bi_make(std::map<std::pair<int64_t, int64_t>, TPoly> c, int64_t pu,
                 int64_t pt) {
  BiSeries r;
  r.pu = clamp(pu);
  r.pt = clamp(pt);
  for (auto& [k, t] : c)
    if (!t.is_zero() && k.first < r.pu && k.second < r.pt)
      r.c.emplace(k, std::move(t));
  r.vu = r.pu;
  r.vt = r.pt;
  for (const auto& [k, t] : r.c) {
    r.vu = std::min(r.vu, k.first);
    r.vt = std::min(r.vt, k.second);
  }
  return r;
}

BiSeries bi_u(const USeries& s) {
  std::map<std::pair<int64_t, int64_t>, TPoly> c;
  for (size_t i = 0; i < s.c.size(); ++i)
    if (!s.c[i].is_zero()) c[{s.val + (int64_t)i, 0}] = s.c[i];
  return bi_make(std::move(c), s.prec, kPrecInf);
}

BiSeries bi_tau(const USeries& s) {
  std::map<std::pair<int64_t, int64_t>, TPoly> c;
  for (size_t i = 0; i < s.c.size(); ++i)
    if (!s.c[i].is_zero()) c[{0, s.val + (int64_t)i}] = s.c[i];
  return bi_make(std::move(c), kPrecInf, s.prec);
}

BiSeries add(const Field& F, const BiSeries& a, const BiSeries& b) {
  std::map<std::pair<int64_t, int64_t>, TPoly> c = a.c;
  for (const auto& [k, t] : b.c) {
    auto it = c.find(k);
    if (it == c.end())
      c.emplace(k, t);
    else
      it->second = add(F, it->second, t);
  }
  return bi_make(std::move(c), std::min(a.pu, b.pu), std::min(a.pt, b.pt));
}

BiSeries sub(const Field& F, const BiSeries& a, const BiSeries& b) {
  std::map<std::pair<int64_t, int64_t>, TPoly> c = a.c;
  for (const auto& [k, t] : b.c) {
    auto it = c.find(k);
    if (it == c.end())
      c.emplace(k, neg(F, t));
    else
      it->second = sub(F, it->second, t);
  }
  return bi_make(std::move(c), std::min(a.pu, b.pu), std::min(a.pt, b.pt));
}

BiSeries mul(const Field& F, const BiSeries& a, const BiSeries& b) {
  // Each factor is ignorant beyond its precision, and that ignorance enters
  // the product shifted by the other factor's least exponent — per variable.
  const int64_t pu = clamp(std::min(a.pu + b.vu, b.pu + a.vu));
  const int64_t pt = clamp(std::min(a.pt + b.vt, b.pt + a.vt));
  std::map<std::pair<int64_t, int64_t>, TPoly> c;
  for (const auto& [ka, ta] : a.c)
    for (const auto& [kb, tb] : b.c) {
      const std::pair<int64_t, int64_t> k{ka.first + kb.first,
                                          ka.second + kb.second};
      if (k.first >= pu || k.second >= pt) continue;
      TPoly prod = mul(F, ta, tb);
      auto it = c.find(k);
      if (it == c.end())
        c.emplace(k, std::move(prod));
      else
        it->second = add(F, it->second, prod);
    }
  return bi_make(std::move(c), pu, pt);
}

BiSeries swap_vars(const BiSeries& a) {
  std::map<std::pair<int64_t, int64_t>, TPoly> c;
  for (const auto& [k, t] : a.c) c[{k.second, k.first}] = t;
  return bi_make(std::move(c), a.pt, a.pu);
}

BiWindow common_window(const BiSeries& a, const BiSeries& b) {
  return {std::min(a.vu, b.vu), std::min(a.pu, b.pu), std::min(a.vt, b.vt),
          std::min(a.pt, b.pt)};
}

std::optional<BiMismatch> first_mismatch(const BiSeries& a,
                                         const BiSeries& b) {
  const BiWindow w = common_window(a, b);
  for (int64_t eu = w.lou; eu < w.hiu; ++eu)
    for (int64_t et = w.lot; et < w.hit; ++et) {
      const TPoly& x = a.coeff(eu, et);
      const TPoly& y = b.coeff(eu, et);
      if (!(x == y)) return BiMismatch{eu, et, x, y};
    }
  return std::nullopt;
}

}  // namespace dmf
