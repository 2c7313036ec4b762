"""Seeded random codes and label/component scrambling, shared by tests."""

from fractions import Fraction

from horncode.code_model import make_code, make_component_code

F = Fraction


def random_code(rng):
    n_comps = rng.randint(1, 4)
    pool = ["p1", "p2", "p3"][: rng.randint(1, 3)]
    used = set()
    comps = []
    for _ in range(n_comps):
        ends = [min(F(rng.randint(-2, 2), rng.choice([1, 2, 3])), F(1))
                for _ in range(rng.randint(0, 3))]
        attach = {}
        for lbl in pool:
            if rng.random() < 0.5:
                attach[lbl] = [1 + F(rng.randint(0, 3), rng.choice([1, 2, 3]))
                               for _ in range(rng.randint(1, 2))]
                used.add(lbl)
        comps.append(make_component_code(rng.choice([-1, 1]),
                                         rng.randint(0, 3), ends, attach))
    missing = [lbl for lbl in pool if lbl not in used]
    if missing:
        last = comps[-1]
        attach = dict(last.attachments) | {lbl: [F(1)] for lbl in missing}
        comps[-1] = make_component_code(last.theta, last.genus, last.ends,
                                        attach)
    return make_code(comps)


def scrambled(code, rng):
    order = list(range(len(code.components)))
    rng.shuffle(order)
    names = sorted(code.singular_labels)
    renames = dict(zip(names, rng.sample(
        [f"z{k}" for k in range(len(names))], len(names))))
    comps = []
    for i in order:
        c = code.components[i]
        attach = {renames[l]: list(v) for l, v in c.attachments}
        comps.append(make_component_code(c.theta, c.genus, c.ends, attach))
    return make_code(comps)
