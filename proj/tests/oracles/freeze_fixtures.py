#!/usr/bin/env python3
"""Independent brute-force oracles used to freeze expected values in the C++ tests.

Nothing here shares code with the library; each value is recomputed from the
defining property (digit sums, Legendre's condition, direct morphism iteration,
sliding windows, exhaustive machine enumeration).
"""
from fractions import Fraction
from itertools import product
from math import isqrt


def thue_morse(n):
    return bin(n).count("1") % 2


def balance(n):
    if n == 0:
        return 1
    s = bin(n)[2:]
    return 1 if abs(s.count("1") - s.count("0")) <= 1 else 0


def iterate_fixed_point(rules, start, count):
    word = list(rules[start])
    i = 1
    while len(word) < count:
        word += list(rules[word[i]])
        i += 1
    return word[:count]


def factors(seq, n):
    return {tuple(seq[j:j + n]) for j in range(len(seq) - n + 1)}


def right_special(seq, n):
    succ = {}
    for j in range(len(seq) - n):
        succ.setdefault(tuple(seq[j:j + n]), set()).add(seq[j + n])
    return sum(1 for s in succ.values() if len(s) >= 2)


SIGMA1 = {"a": "acb", "b": "abc", "c": "c"}
SIGMA2 = {"a": "ab", "b": "ccb", "c": "c"}
TM = {"0": "01", "1": "10"}


def dilation_min(rules, start, n_max):
    u = iterate_fixed_point(rules, start, n_max)
    w = 0
    best = None
    for n in range(1, n_max + 1):
        w += len(rules[u[n - 1]])
        r = Fraction(w, n)
        if best is None or r < best[0]:
            best = (r, n)
    return best


def sqrt2_binary_full(count):
    # integer part then fractional digits, base 2
    val = isqrt(2 * 4 ** (count - 1))
    return [int(c) for c in bin(val)[2:]][:count]


def imitation(target, k, states):
    best = 0
    for s in range(1, states + 1):
        for delta in product(range(s), repeat=s * k):
            for out in product(range(2), repeat=s):
                agree = 0
                for n in range(len(target)):
                    q = 0
                    if n:
                        for ch in bin(n)[2:]:
                            q = delta[q * k + int(ch)]
                    if out[q] != target[n]:
                        break
                    agree += 1
                best = max(best, agree)
    return best


def main():
    tm = [thue_morse(n) for n in range(1 << 16)]
    print("tm p(3) =", len(factors(tm, 3)))
    xi2 = [balance(n) for n in range(1 << 16)]
    print("xi2 RS(8) on 2^16 =", right_special(xi2, 8))
    print("RS('0011000111',1) =", right_special([int(c) for c in "0011000111"], 1))
    print("sigma2 dilation min N=1e4:", dilation_min(SIGMA2, "a", 10000))
    print("sigma1 dilation min N=1e4:", dilation_min(SIGMA1, "a", 10000))
    target = sqrt2_binary_full(64)
    print("sqrt2 binary full:", "".join(map(str, target[:16])))
    print("imitation sqrt2 k=2 states<=2 len 64:", imitation(target, 2, 2))
    x1 = iterate_fixed_point(SIGMA1, "a", 1 << 16)
    p = [0] + [len(factors(x1, n)) for n in range(1, 65)]
    print("xi1 p(n), n=1..64:", p[1:])
    xi2p = [0] + [len(factors(xi2, n)) for n in range(1, 130)]
    print("xi2 p(n), n=1..129:", xi2p[1:])
    diffs = [xi2p[n + 1] - xi2p[n] for n in range(1, 129)]
    print("xi2 first n with p(n+1)-p(n) > 10:", next(n for n, d in enumerate(diffs, 1) if d > 10))
    print("sqrt2 base2 frac 12:", bin(isqrt(2 << 24))[3:])


def xi1_long_table(limit=256):
    x1 = "".join(iterate_fixed_point(SIGMA1, "a", 1 << 16))
    p = [0] + [len({x1[j:j + n] for j in range(len(x1) - n + 1)}) for n in range(1, limit + 1)]
    n0 = 1
    for n in range(1, limit):
        if p[n + 1] * n < p[n] * (n + 1):
            n0 = n + 1
    return p, n0


if __name__ == "__main__":
    main()
    table, n0 = xi1_long_table()
    print("xi1 p(n)/n nondecreasing from n0 =", n0, "(n <= 256)")
    print("xi1 p(128), p(256) =", table[128], table[256])
