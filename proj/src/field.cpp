#include "ic3/field.hpp"

#include <array>

namespace ic3 {
namespace {

// Digits of e in base p, length m.
std::vector<int> unpack(int e, int p, int m) {
  std::vector<int> d(m);
  for (int i = 0; i < m; ++i) {
    d[i] = e % p;
    e /= p;
  }
  return d;
}

int pack(const std::vector<int>& d, int p) {
  int e = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) e = e * p + d[i];
  return e;
}

// Polynomial product modulo the reduction polynomial, coefficients mod p.
int poly_mul(int a, int b, int p, int m, const std::vector<int>& red) {
  std::vector<int> da = unpack(a, p, m), db = unpack(b, p, m);
  std::vector<int> prod(2 * m - 1, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  // Reduce: x^m = -(red[0] + red[1] x + ... + red[m-1] x^{m-1}) since monic.
  for (int k = 2 * m - 2; k >= m; --k) {
    int c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (int i = 0; i < m; ++i) {
      int t = prod[k - m + i] - c * red[i];
      prod[k - m + i] = ((t % p) + p) % p;
    }
  }
  prod.resize(m);
  return pack(prod, p);
}

}  // namespace

FieldSpec field_make(int order) {
  int p = 0, m = 0;
  std::vector<int> red;
  switch (order) {
    case 2: case 3: case 5: case 7: case 11: case 13:
      p = order; m = 1; red = {0, 1};
      break;
    case 4:  p = 2; m = 2; red = {1, 1, 1}; break;        // x^2 + x + 1
    case 8:  p = 2; m = 3; red = {1, 1, 0, 1}; break;     // x^3 + x + 1
    case 9:  p = 3; m = 2; red = {1, 0, 1}; break;        // x^2 + 1
    case 16: p = 2; m = 4; red = {1, 1, 0, 0, 1}; break;  // x^4 + x + 1
    default:
      throw DomainError("unsupported field order " + std::to_string(order));
  }

  FieldSpec f;
  f.p = p;
  f.m = m;
  f.order = order;
  f.reduction = red;
  f.add.assign(order, std::vector<int>(order, 0));
  f.mul.assign(order, std::vector<int>(order, 0));
  f.neg.assign(order, 0);
  f.inv.assign(order, -1);

  for (int a = 0; a < order; ++a) {
    std::vector<int> da = unpack(a, p, m);
    for (int b = 0; b < order; ++b) {
      std::vector<int> db = unpack(b, p, m), s(m);
      for (int i = 0; i < m; ++i) s[i] = (da[i] + db[i]) % p;
      f.add[a][b] = pack(s, p);
      f.mul[a][b] = m == 1 ? (a * b) % p : poly_mul(a, b, p, m, red);
    }
    std::vector<int> n(m);
    for (int i = 0; i < m; ++i) n[i] = (p - da[i]) % p;
    f.neg[a] = pack(n, p);
  }
  for (int a = 1; a < order; ++a)
    for (int b = 1; b < order; ++b)
      if (f.mul[a][b] == 1) f.inv[a] = b;
  return f;
}

}  // namespace ic3
