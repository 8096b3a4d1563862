#include "exthall/numbers.hpp"

#include <stdexcept>

namespace exthall {

BigInt ipow(long base, long exp) {
  if (exp < 0) throw std::invalid_argument("ipow: negative exponent");
  BigInt r = 1;
  BigInt b = base;
  long e = exp;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

Rat qpow(long q, long e) {
  if (e >= 0) return Rat(ipow(q, e));
  return Rat(BigInt(1), ipow(q, -e));
}

std::string rat_str(const Rat& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int primitive_root(int p) {
  if (p == 2) return 1;
  // factor p-1, then test candidates
  std::vector<int> primes;
  int m = p - 1;
  for (int d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      primes.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) primes.push_back(m);
  for (int g = 2; g < p; ++g) {
    bool ok = true;
    for (int q : primes) {
      // g^((p-1)/q) mod p
      long e = (p - 1) / q;
      long r = 1, b = g;
      while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
      }
      if (r == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: no generator found");
}

}  // namespace exthall
