"""Small A-infinity categories with exact structure constants.

Argument order convention, used across the whole package: argument lists
are written the way higher compositions are usually displayed,

    mu([x_k, ..., x_1])   for   mu^k(x_k, ..., x_1),

so the *last* list element is the first morphism of the composable chain:
src(args[i]) == tgt(args[i+1]), the composite runs from src(args[-1]) to
tgt(args[0]).  mu^k has degree 2-k.
"""

import itertools

from .exactlinear import QQ, koszul_sign, shifted_sum


class Gen:
    """A basis generator of a hom space hom(src, tgt)."""

    __slots__ = ("src", "tgt", "label", "degree", "weight")

    def __init__(self, src, tgt, label, degree, weight=None):
        self.src = src
        self.tgt = tgt
        self.label = label
        self.degree = degree
        self.weight = weight

    def key(self):
        return (self.src, self.tgt, self.label)

    def __eq__(self, other):
        return isinstance(other, Gen) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return str(self.key()) < str(other.key())

    def __repr__(self):
        return "%s:%s->%s" % (self.label, self.src, self.tgt)


class Mor:
    """A homogeneous element of one hom space: sparse basis coefficients."""

    def __init__(self, src, tgt, degree, coeffs):
        self.src = src
        self.tgt = tgt
        self.degree = degree
        self.coeffs = {g: c for g, c in coeffs.items() if c}
        for g in self.coeffs:
            if (g.src, g.tgt) != (src, tgt):
                raise ValueError("generator %r outside hom(%s, %s)" % (g, src, tgt))
            if g.degree != degree:
                raise ValueError("element not homogeneous: %r has degree %d, stated %d"
                                 % (g, g.degree, degree))

    def is_zero(self):
        return not self.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0[%s->%s]" % (self.src, self.tgt)
        return " + ".join("%s*%r" % (c, g) for g, c in sorted(
            self.coeffs.items(), key=lambda t: str(t[0].key())))


def add_into(acc, gen, coeff, zero):
    if not coeff:
        return
    acc[gen] = acc.get(gen, zero) + coeff
    if not acc[gen]:
        del acc[gen]


class AInfCategory:
    """Objects, hom generators, and sparse mu tables up to an arity cap.

    mu: dict arity k -> dict (display tuple of Gens) -> dict Gen -> scalar.
    Entries absent from the table are zero.  Units, when present, must be
    strict and are checked by ``check_strict_units``.
    """

    def __init__(self, name, objects, gens, mu, units=None, arity_cap=6, field=QQ):
        self.name = name
        self.objects = list(objects)
        self.gens = sorted(gens)
        self.field = field
        self.arity_cap = arity_cap
        self.hom = {}
        for g in self.gens:
            self.hom.setdefault((g.src, g.tgt), []).append(g)
        self.mu = {k: {args: {o: c for o, c in out.items() if c}
                       for args, out in table.items()}
                   for k, table in mu.items()}
        for k, table in self.mu.items():
            if k > arity_cap:
                raise ValueError("mu^%d stored beyond the arity cap %d" % (k, arity_cap))
            for args, out in table.items():
                if len(args) != k:
                    raise ValueError("mu^%d entry with %d inputs" % (k, len(args)))
                if not composable(args):
                    raise ValueError("mu^%d entry on non-composable tuple %r" % (k, args))
                want = sum(g.degree for g in args) + 2 - k
                for o in out:
                    if o.degree != want:
                        raise ValueError(
                            "mu^%d entry %r -> %r violates degree 2-k" % (k, args, o))
                    if (o.src, o.tgt) != (args[-1].src, args[0].tgt):
                        raise ValueError(
                            "mu^%d entry %r -> %r violates objects" % (k, args, o))
        self.units = dict(units) if units else None

    def hom_gens(self, x, y):
        return self.hom.get((x, y), [])

    def mu_entry(self, args):
        """Raw table lookup on a display tuple of generators; {} if absent."""
        table = self.mu.get(len(args))
        if not table:
            return {}
        return table.get(tuple(args), {})

    def composable_tuples(self, length):
        """All composable display tuples of generators of a given length."""
        if length == 0:
            return
        by_tgt = {}
        for g in self.gens:
            by_tgt.setdefault(g.tgt, []).append(g)

        def extend(partial):
            # partial is built right-to-left: partial[0] is the current left end
            if len(partial) == length:
                yield tuple(partial)
                return
            for g in by_tgt.get(partial[0].src, []):
                yield from extend([g] + partial)

        for g in self.gens:
            yield from extend([g])

    def check_strict_units(self):
        """Assert the strict unit identities exactly; returns list of failures."""
        if not self.units:
            return []
        bad = []
        one = self.field.one
        for x, e in self.units.items():
            if self.mu_entry((e,)):
                bad.append(("mu1(e_%s) != 0" % x, e))
            for g in self.gens:
                # mu^2(x, e) = x for x with src x.src == unit object
                if g.src == x:
                    out = self.mu_entry((g, e))
                    if out != {g: one}:
                        bad.append(("mu2(%r, e_%s) != %r" % (g, x, g), out))
                if g.tgt == x:
                    # (-1)^{|g|} mu^2(e, g) = g
                    out = self.mu_entry((e, g))
                    want = {g: one if g.degree % 2 == 0 else -one}
                    if out != want:
                        bad.append(("mu2(e_%s, %r) != (-1)^|g| %r" % (x, g, g), out))
            for k in range(3, self.arity_cap + 1):
                for args, out in self.mu.get(k, {}).items():
                    if e in args and out:
                        bad.append(("mu%d with unit e_%s nonzero" % (k, x), args))
        return bad


def composable(args):
    """Display-order composability: src(args[i]) == tgt(args[i+1])."""
    return all(args[i].src == args[i + 1].tgt for i in range(len(args) - 1))


def evaluate_mu(cat, args):
    """Multilinear extension of the mu tables; args is a display list of Mor.

    Returns a Mor from src(args[-1]) to tgt(args[0]) of degree
    sum(degrees) + 2 - k.
    """
    k = len(args)
    if k < 1 or k > cat.arity_cap:
        raise ValueError("arity %d outside 1..%d" % (k, cat.arity_cap))
    for a, b in itertools.pairwise(args):
        if a.src != b.tgt:
            raise ValueError("arguments not composable: %s != %s" % (a.src, b.tgt))
    out_deg = sum(a.degree for a in args) + 2 - k
    acc = {}
    for combo in itertools.product(*[a.coeffs.items() for a in args]):
        gens = tuple(g for g, _ in combo)
        coeff = cat.field.one
        for _, c in combo:
            coeff = coeff * c
        for o, c in cat.mu_entry(gens).items():
            add_into(acc, o, coeff * c, cat.field.zero)
    return Mor(args[-1].src, args[0].tgt, out_deg, acc)


def mu_on_gens(cat, gens):
    """mu on a display tuple of generators, as a {Gen: scalar} dict."""
    return dict(cat.mu_entry(tuple(gens)))


def ainf_defect(cat, args):
    """The signed double sum of the A-infinity relation on one display tuple.

    args: display tuple (x_d, ..., x_1) of generators.  Terms are
    (-1)^{koszul(x_1..x_i)} mu^{d-j+1}(x_d, .., x_{i+j+1}, mu^j(...), x_i, .., x_1),
    where the inner block in display coordinates is args[d-i-j : d-i].
    Returns {Gen: scalar}; zero dict iff the relation holds on this tuple.
    """
    d = len(args)
    field = cat.field
    acc = {}
    degs_right_to_left = [g.degree for g in reversed(args)]  # x_1, x_2, ..., x_d
    for j in range(1, min(d, cat.arity_cap) + 1):
        for i in range(0, d - j + 1):
            if d - j + 1 > cat.arity_cap:
                continue
            inner = args[d - i - j: d - i]
            sign = koszul_sign(degs_right_to_left, 1, i)
            inner_out = cat.mu_entry(inner)
            if not inner_out:
                continue
            prefix = args[: d - i - j]
            suffix = args[d - i:]
            for m, c in inner_out.items():
                outer = prefix + (m,) + suffix
                for o, c2 in cat.mu_entry(outer).items():
                    add_into(acc, o, field(sign) * c * c2, field.zero)
    return acc


def verify_ainf_relations(cat, max_total_arity=None):
    """Check every A-infinity relation instance up to the given total arity.

    Returns a report dict: {"ok": bool, "checked": n, "witness": None or
    details of the first violation including the offending term list}.
    """
    if max_total_arity is None:
        max_total_arity = cat.arity_cap
    checked = 0
    for d in range(1, max_total_arity + 1):
        for args in cat.composable_tuples(d):
            defect = ainf_defect(cat, args)
            checked += 1
            if defect:
                gen, val = next(iter(sorted(defect.items(), key=lambda t: str(t[0].key()))))
                return {
                    "ok": False,
                    "checked": checked,
                    "witness": {
                        "arity": d,
                        "inputs": args,
                        "output_gen": gen,
                        "value": val,
                        "koszul_note": "signs (-1)^{x(1;i)} per the defining relation",
                    },
                }
    return {"ok": True, "checked": checked, "witness": None}


def opposite_category(cat):
    """The opposite category: hom^op(X,Y) = hom(Y,X) and

        mu_op(a_1, ..., a_k) = (-1)^{sum(|a|)-k} mu(a_k, ..., a_1)

    (arguments on both sides in display order).  Involution on the nose.
    """
    op_gens = {g: Gen(g.tgt, g.src, g.label, g.degree, g.weight) for g in cat.gens}
    mu_op = {}
    for k, table in cat.mu.items():
        new_table = {}
        for args, out in table.items():
            sign = koszul_sign([g.degree for g in args], 1, k)
            new_args = tuple(op_gens[g] for g in reversed(args))
            new_table[new_args] = {op_gens[o]: cat.field(sign) * c for o, c in out.items()}
        mu_op[k] = new_table
    units = None
    if cat.units:
        units = {x: op_gens[e] for x, e in cat.units.items()}
    return AInfCategory(cat.name + "^op", cat.objects,
                        list(op_gens.values()), mu_op, units=units,
                        arity_cap=cat.arity_cap, field=cat.field)


def mutate_one_entry(cat, arity, args, out_gen, factor=-1):
    """A copy of the category with a single structure constant rescaled.

    The mutation suite uses factor=-1 (a single sign flip) and requires the
    verifier to locate a violation whenever the flipped entry participates
    in a nonzero relation instance.
    """
    mu = {k: {a: dict(o) for a, o in t.items()} for k, t in cat.mu.items()}
    mu[arity][tuple(args)][out_gen] = mu[arity][tuple(args)][out_gen] * factor
    return AInfCategory(cat.name + "~mut", cat.objects, cat.gens, mu,
                        units=None, arity_cap=cat.arity_cap, field=cat.field)
