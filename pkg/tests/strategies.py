"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from nakct import kupisch


@st.composite
def acyclic_entries(draw, max_width=9, max_ell=5):
    width = draw(st.integers(1, max_width))
    out = [1]
    for _ in range(width - 1):
        out.append(draw(st.integers(2, min(out[-1] + 1, max_ell))))
    return tuple(out)


def acyclic_series(max_width=9, max_ell=5):
    return acyclic_entries(max_width, max_ell).map(kupisch.validate)


@st.composite
def cyclic_series(draw, max_width=5, max_ell=5):
    width = draw(st.integers(1, max_width))
    entries = draw(st.lists(st.integers(2, max_ell), min_size=width, max_size=width))
    # repair growth violations by lowering offending entries until the cycle is valid
    changed = True
    while changed:
        changed = False
        for i in range(width):
            if entries[i] > entries[i - 1] + 1:
                entries[i] = entries[i - 1] + 1
                changed = True
    return kupisch.validate(entries, True)
