"""Integer factorization helpers sized for group orders (< 2^63, smooth in
practice). Prime sets are plain frozensets of primes."""

from tigroups.errors import InvalidInput


def factorint(n):
    """{prime: multiplicity} by trial division."""
    if n < 1:
        raise InvalidInput("can only factor positive integers, got %r" % (n,))
    out = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_set(n):
    return frozenset(factorint(n))


def p_part(n, p):
    """Largest power of p dividing n."""
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def pi_part(n, pi):
    """Largest divisor of n with all prime factors in pi."""
    out = 1
    for p, e in factorint(n).items():
        if p in pi:
            out *= p**e
    return out


def is_pi_number(n, pi):
    return pi_part(n, pi) == n


def is_prime(n):
    return n > 1 and factorint(n) == {n: 1}


def complement_primes(n, pi):
    """Primes of n outside pi."""
    return frozenset(p for p in factorint(n) if p not in pi)


def parse_primes(text):
    """Parse a prime set like "2,3" or "{2, 3}"."""
    s = text.strip().strip("{}").strip()
    if not s:
        return frozenset()
    out = set()
    for tok in s.replace(",", " ").split():
        try:
            p = int(tok)
        except ValueError:
            raise InvalidInput("bad prime %r in %r" % (tok, text)) from None
        if not is_prime(p):
            raise InvalidInput("%d is not prime" % (p,))
        out.add(p)
    return frozenset(out)


def format_primes(pi):
    return "{" + ",".join(str(p) for p in sorted(pi)) + "}"
