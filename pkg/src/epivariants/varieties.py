"""Terms and identities in the signature (., ') and membership tests for the
unary-semigroup varieties used throughout this library.

Identity syntax: juxtaposition or '*' for the product, postfix ' for the
unary operation, x^k for repeated products (expanded at parse time, k >= 1),
single-letter variables, parentheses as usual.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .epigroup import is_completely_regular


class UnboundVariable(Exception):
    pass


class IdentityParseError(Exception):
    pass


class VarietyError(Exception):
    """Internal failure: two provably equivalent criteria disagreed."""


# Terms are nested tuples: ("var", name), ("dot", l, r), ("prime", child).

def tvar(name):
    return ("var", name)


def tdot(l, r):
    return ("dot", l, r)


def tprime(c):
    return ("prime", c)


def tpow(term, k):
    if k < 1:
        raise ValueError("powers must be positive")
    out = term
    for _ in range(k - 1):
        out = tdot(out, term)
    return out


def tproduct(terms):
    """Left-associated product of a non-empty list of terms."""
    out = terms[0]
    for term in terms[1:]:
        out = tdot(out, term)
    return out


def term_variables(term):
    kind = term[0]
    if kind == "var":
        return {term[1]}
    if kind == "prime":
        return term_variables(term[1])
    return term_variables(term[1]) | term_variables(term[2])


def term_text(term):
    kind = term[0]
    if kind == "var":
        return term[1]
    if kind == "prime":
        child = term_text(term[1])
        if term[1][0] == "dot":
            child = f"({child})"
        return child + "'"
    l, r = term_text(term[1]), term_text(term[2])
    if term[2][0] == "dot":
        r = f"({r})"
    return f"{l}*{r}"


@dataclass(frozen=True)
class Identity:
    lhs: tuple
    rhs: tuple

    @property
    def text(self):
        return f"{term_text(self.lhs)} = {term_text(self.rhs)}"

    @property
    def variables(self):
        return sorted(term_variables(self.lhs) | term_variables(self.rhs))

    def __str__(self):
        return self.text


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace() or ch == "*":
            i += 1
        elif ch.isalpha():
            tokens.append(("var", ch))
            i += 1
        elif ch in "()'":
            tokens.append((ch, ch))
            i += 1
        elif ch == "^":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise IdentityParseError(f"'^' needs a numeric exponent in {text!r}")
            tokens.append(("pow", int(text[i + 1:j])))
            i = j
        else:
            raise IdentityParseError(f"unexpected character {ch!r} in {text!r}")
    return tokens


def parse_term(text):
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]][0] if pos[0] < len(tokens) else None

    def take():
        if pos[0] >= len(tokens):
            raise IdentityParseError(f"unexpected end of term in {text!r}")
        tok = tokens[pos[0]]
        pos[0] += 1
        return tok

    def parse_product():
        factors = [parse_factor()]
        while peek() in ("var", "("):
            factors.append(parse_factor())
        return tproduct(factors)

    def parse_factor():
        kind, value = take()
        if kind == "var":
            term = tvar(value)
        elif kind == "(":
            term = parse_product()
            if peek() != ")":
                raise IdentityParseError(f"missing ')' in {text!r}")
            take()
        else:
            raise IdentityParseError(f"unexpected token {value!r} in {text!r}")
        while peek() in ("'", "pow"):
            kind, value = take()
            if kind == "'":
                term = tprime(term)
            else:
                term = tpow(term, value)
        return term

    term = parse_product()
    if pos[0] != len(tokens):
        raise IdentityParseError(f"trailing tokens in {text!r}")
    return term


def parse_identity(text):
    if text.count("=") != 1:
        raise IdentityParseError(f"an identity needs exactly one '=': {text!r}")
    lhs, rhs = text.split("=")
    return Identity(parse_term(lhs), parse_term(rhs))


def eval_term(term, s, env):
    kind = term[0]
    if kind == "var":
        try:
            return env[term[1]]
        except KeyError:
            raise UnboundVariable(term[1]) from None
    if kind == "prime":
        return s.unary[eval_term(term[1], s, env)]
    return s.base.table[eval_term(term[1], s, env)][eval_term(term[2], s, env)]


def find_counterexample(s, identity):
    """Brute force over all |S|^k assignments; the lexicographically first
    failing environment, or None if the identity holds."""
    names = identity.variables
    n = s.order
    for values in iproduct(range(n), repeat=len(names)):
        env = dict(zip(names, values))
        if eval_term(identity.lhs, s, env) != eval_term(identity.rhs, s, env):
            return env
    return None


def satisfies(s, identity):
    return find_counterexample(s, identity) is None


@dataclass(frozen=True)
class VarietyReport:
    name: str
    holds: bool
    failing_identity: Identity | None = None
    failing_assignment: dict | None = None


def _check_identities(name, s, identities):
    for ident in identities:
        env = find_counterexample(s, ident)
        if env is not None:
            return VarietyReport(name, False, ident, env)
    return VarietyReport(name, True)


EQ_PINV_FIXED = parse_identity("x'*x*x' = x'")
EQ_COMMUTE = parse_identity("x*x' = x'*x")


def _power_prefix_identity(prefix_power, n, tail):
    # term x^n with n possibly 0 (empty prefix), followed by tail factors
    x = tvar("x")
    factors = [x] * prefix_power + tail
    return tproduct(factors) if factors else None


def e_identity(n):
    """x^{n+1} x' = x^n."""
    x = tvar("x")
    return Identity(tdot(tpow(x, n + 1), tprime(x)), tpow(x, n))


def e_identity_alt(n):
    """x^{n-1} x'' = x^n (the empty power is dropped for n = 1)."""
    x = tvar("x")
    lhs = tprime(tprime(x)) if n == 1 else tdot(tpow(x, n - 1), tprime(tprime(x)))
    return Identity(lhs, tpow(x, n))


def v_identity_1(n):
    """x y^{n-1} y'' = x y^n."""
    x, y = tvar("x"), tvar("y")
    lhs = tproduct([x] + [y] * (n - 1) + [tprime(tprime(y))])
    return Identity(lhs, tdot(x, tpow(y, n)))


def v_identity_2(n):
    """x'' x^{n-1} y = x^n y."""
    x, y = tvar("x"), tvar("y")
    lhs = tproduct([tprime(tprime(x))] + [x] * (n - 1) + [y])
    return Identity(lhs, tdot(tpow(x, n), y))


EQ_PRODUCT_STABLE = parse_identity("(x*y)'' = x*y")


def in_E(s, n):
    """Membership in E_n, checked through both equivalent axiomatizations."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    primary = _check_identities(f"E_{n}", s, [EQ_PINV_FIXED, EQ_COMMUTE, e_identity(n)])
    alt = _check_identities(f"E_{n}", s, [EQ_PINV_FIXED, EQ_COMMUTE, e_identity_alt(n)])
    if primary.holds != alt.holds:
        raise VarietyError(
            f"E_{n} axiomatizations disagree on a unary semigroup of order {s.order}"
        )
    return primary


def in_V(s, n):
    """Membership in V_n; also asserts E_n <= V_n <= E_{n+1} on this input."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    report = _check_identities(
        f"V_{n}", s, [EQ_PINV_FIXED, EQ_COMMUTE, v_identity_1(n), v_identity_2(n)]
    )
    if in_E(s, n).holds and not report.holds:
        raise VarietyError(f"E_{n} member escaped V_{n}")
    if report.holds and not in_E(s, n + 1).holds:
        raise VarietyError(f"V_{n} member escaped E_{n + 1}")
    return report


EQ_SQUARE_PRIME = parse_identity("(x^2)' = x'^2")
EQ_DOUBLE_PRIME = parse_identity("x*x'*x = x''")


def in_W(s):
    """Membership in W, checked through three equivalent characterizations:
    E_2 plus (xy)'' = xy; the five-identity equational basis; and the
    structural test that every product is completely regular.  Requires the
    canonical pseudoinverse map.
    """
    if not s.canonical:
        raise ValueError("in_W requires the canonical pseudoinverse map")
    via_e2 = in_E(s, 2).holds and satisfies(s, EQ_PRODUCT_STABLE)
    equational = _check_identities(
        "W",
        s,
        [EQ_PINV_FIXED, EQ_COMMUTE, EQ_DOUBLE_PRIME, EQ_SQUARE_PRIME, EQ_PRODUCT_STABLE],
    )
    structural = in_W_structural(s.base)
    if not (via_e2 == equational.holds == structural):
        raise VarietyError(
            f"W characterizations disagree: E2-based={via_e2}, "
            f"equational={equational.holds}, structural={structural}"
        )
    return equational


def _subsemigroup_table(t, elements):
    elements = sorted(elements)
    pos = {e: i for i, e in enumerate(elements)}
    rows = []
    for a in elements:
        row = []
        for b in elements:
            v = t.table[a][b]
            if v not in pos:
                raise VarietyError(f"subset not closed: {a}*{b} = {v}")
            row.append(pos[v])
        rows.append(row)
    from .core import CayleyTable

    return CayleyTable(rows)


def in_W_structural(t):
    """Three equivalent structural criteria, asserted to agree:
    every product xy is completely regular; every principal left ideal Sc is
    a completely regular subsemigroup; likewise every cS."""
    from .epigroup import epigroup_data

    n = t.order
    index = epigroup_data(t).index
    products_cr = all(
        index[t.table[x][y]] == 1 for x in range(n) for y in range(n)
    )
    left_cr = True
    right_cr = True
    for c in range(n):
        sc = {t.table[s][c] for s in range(n)}
        cs = {t.table[c][s] for s in range(n)}
        if not is_completely_regular(_subsemigroup_table(t, sc)):
            left_cr = False
        if not is_completely_regular(_subsemigroup_table(t, cs)):
            right_cr = False
    if not (products_cr == left_cr == right_cr):
        raise VarietyError(
            f"W structural criteria disagree: products={products_cr}, "
            f"left ideals={left_cr}, right ideals={right_cr}"
        )
    return products_cr
