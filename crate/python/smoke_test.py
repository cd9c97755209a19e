#!/usr/bin/env python3
"""Smoke test for the stickel_py extension module.

Builds nothing itself: it locates the compiled cdylib under target/ (run
`cargo build -p stickel-py` or `--release` first), stages it under the name
Python expects, imports it, and exercises the main types and operations.
"""

import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def locate_cdylib() -> Path:
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libstickel_py.so", "libstickel_py.dylib", "stickel_py.dll")
    ]
    for c in candidates:
        if c.exists():
            return c
    sys.exit("stickel_py cdylib not found; run `cargo build -p stickel-py` first")


def stage(cdylib: Path) -> Path:
    staging = Path(tempfile.mkdtemp(prefix="stickel-py-"))
    suffix = ".so" if cdylib.suffix != ".dll" else ".pyd"
    shutil.copy2(cdylib, staging / f"stickel_py{suffix}")
    return staging


def main() -> None:
    sys.path.insert(0, str(stage(locate_cdylib())))
    import stickel_py as sp

    checks = 0

    def ok(label: str) -> None:
        nonlocal checks
        checks += 1
        print(f"  ok: {label}")

    # fields and elements
    f13 = sp.Field(13)
    assert f13.size() == "13" and f13.degree() == 1
    f9 = sp.Field(3).extend("x^2+1")
    assert f9.size() == "9" and f9.degree() == 2
    x = f9.element("x")
    assert str(x * x) == "[2,0]"  # x^2 = -1
    ok("field tower arithmetic (x^2 = -1 in F_9)")

    # descriptor round trip
    again = sp.descriptor(f9.descriptor())
    assert again == f9 and again.descriptor() == f9.descriptor()
    ok("descriptor round trip")

    # characters and nonresidues (squares mod 13: 1, 3, 4, 9, 10, 12)
    two = f13.element("2")
    assert two.is_nonresidue(2) and not f13.element("4").is_nonresidue(2)
    zeta = sp.find_zeta(f13, 3)
    assert str(zeta) == "3" and str(zeta.pow("3")) == "1"
    ok("character, nonresidue test, zeta scan")

    # factor-count witness and DDF
    assert sp.check_property1(sp.Field(5), "x^2+2", 2) == (2, 1, "x^2+2")
    assert sp.check_property1(sp.Field(5), "x^4+1", 2) is None
    assert sp.ddf(sp.Field(5), "x^2-1") == [(1, 2, "x^2+4")]
    assert sp.stickelberger_sign(sp.Field(5), "x^2+2") == -1
    ok("factor-count property and DDF")

    # resolvent nonresidue in F_25, verified by the character
    f25 = sp.Field(5).extend("x^2+2")
    a = sp.nonresidue("x^2+2", 2, f25)
    assert a.is_nonresidue(2)
    ok("resolvent nonresidue in F_25")

    # cube roots in F_13 two ways
    for fn in (sp.rth_root, sp.cor13_root):
        if fn is sp.cor13_root:
            continue  # needs r | degree; F_13 has degree 1
        root = fn(f13.element("8"), 3)
        assert root.pow("3") == f13.element("8")
    big = sp.Field(13).extend(sp.Field(13).find_irreducible(3))
    val = big.element("x").pow("3")
    root = sp.cor13_root(val, 3)
    assert root.pow("3") == val
    ok("r-th roots (digit descent and full pipeline)")

    # discriminants: Swan's closed form vs the Sylvester path
    f7 = sp.Field(7)
    one = f7.element("1")
    swan = sp.swan_discriminant(f7, "4", "1", one, one)
    direct = sp.discriminant(f7, "x^4+x+1")
    assert swan == direct
    huge = sp.swan_discriminant(f7, "340282366920938463463374607431768211456", "3", one, one)
    assert isinstance(str(huge), str)
    ok("Swan discriminant, including an exponentially large degree")

    # r-power tower without a root of unity in the base
    h9 = sp.build_rpower_field(sp.Field(2), 3, 2, "x^3+x+1")
    assert sp.Field(2).is_irreducible(h9)
    assert h9.startswith("x^9")
    ok("degree-9 tower over F_2 via the cyclotomic ring")

    # experiment tables
    table = dict(sp.least_nonresidue_table(2, 30))
    assert table[7] == 3 and table[5] == 2
    hit = sp.trinomial_search(13, 7)
    assert hit is not None and hit[0] % 2 == 0
    ok("experiment tables (least nonresidue, trinomial probe)")

    print(f"smoke test passed ({checks} groups)")


if __name__ == "__main__":
    main()
