"""
The built-in corpus of tricky junction drawings.

Nineteen small networks cover the usual suspects: roundabouts, dual
carriageways, cloverleafs, cul-de-sacs.  Each ships with a hand-drawn
target and a list of checks the simplified output should satisfy; three
cases involving grade separation are known-hard and not gated.
"""
from streetmorph import SimplifyParams, simplify
from streetmorph.artifacts import DetectionParams
from streetmorph.fixtures import all_cases

passed = 0
for case in all_cases():
    params = SimplifyParams(detection=DetectionParams(exclusion_mask=case.mask))
    out, report = simplify(case.network, params)
    checks = [(label, fn(out)) for label, fn in case.predicates]
    ok = all(result for _, result in checks)
    passed += ok
    gate = "gated" if case.gated else "ungated"
    print(f"{'PASS' if ok else 'fail'} [{gate}] {case.name}: "
          f"{len(case.network.edges)} -> {len(out.edges)} edges")
    for label, result in checks:
        if not result:
            print(f"       missed: {label}")

print(f"\n{passed} of 19 meet their targets with default settings")
