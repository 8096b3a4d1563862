#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace exthall {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// base^exp for exp >= 0
BigInt ipow(long base, long exp);

// q^e as an exact rational; e may be negative
Rat qpow(long q, long e);

// "num/den" in lowest terms, plain "num" when the denominator is 1
std::string rat_str(const Rat& r);

bool is_prime(int n);

// smallest generator of the multiplicative group of F_p
int primitive_root(int p);

}  // namespace exthall
