"""Compare the three-term shape at t = 1 ((n, k) = (4, 3) and (5, 3)) with the true dual.

The closed form is only claimed for t >= 2.  This script evaluates the same
shape at t = 1 under the absolute trace and prints agreement counts; nothing
here is asserted.
"""

from __future__ import annotations

from cmbent import cmdual, gf3, walsh


def main() -> None:
    for n, k in [(4, 3), (5, 3)]:
        ctx = gf3.ctx_new(n)
        terms = cmdual.three_term_terms_any_t(n, k)
        shape = ", ".join(f"({t.sign:+d}, a^{t.a_power}, x^{t.lam_power})" for t in terms)
        print(f"n={n} k={k}: {shape}")
        for a in (ctx.one, ctx.generator):
            params = cmdual.CmParams(n, k, a)
            dual = walsh.classify(walsh.walsh_fast(walsh.cm_function(ctx, a, k))).dual.values
            hits = int((cmdual.absolute_trace_table(params, terms) == dual).sum())
            print(f"  eta={params.eta:+d}: {hits}/{ctx.q} points agree")


if __name__ == "__main__":
    main()
