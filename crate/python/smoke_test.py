"""Smoke test for the `hnn` extension module.

Build first with `cargo build -p hnn-py --release`, then run
`python3 python/smoke_test.py [path/to/libhnn_py.so]`.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load(path=None):
    try:
        import hnn

        return hnn
    except ImportError:
        pass
    candidates = [pathlib.Path(path)] if path else [
        ROOT / "target" / profile / "libhnn_py.so" for profile in ("release", "debug")
    ]
    for lib in candidates:
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("hnn", str(lib))
            spec = importlib.util.spec_from_file_location("hnn", lib, loader=loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("libhnn_py.so not found; run `cargo build -p hnn-py --release`")


def main():
    hnn = load(sys.argv[1] if len(sys.argv) > 1 else None)

    assert hnn.parse_word("d d^-1 c") == "c"
    assert hnn.eval_g("b0^4") == "1, 0, 0; 0, 1, 0; 0, 0, 1"
    assert hnn.eval_g("d c^-1") != hnn.eval_g("c d^-1")
    assert hnn.is_trivial_in_h("t d t^-1 d^-3", 3)
    assert not hnn.is_trivial_in_h("t d t^-1 d^-2", 3)

    assert hnn.eval_q("d^4", 4)["identity"]
    p = hnn.eval_p("t", 3, 2)
    assert (p["t_exp"], p["identity"]) == (1, False)

    cert = hnn.separate("d", 3)
    assert (cert["verdict"], cert["m"], cert["route"]) == ("separated", 1, "bs-part")
    assert hnn.separate("t c t^-1 c^-3", 3)["verdict"] == "trivial"
    try:
        hnn.separate("d", 4)
    except ValueError as e:
        assert "odd" in str(e)
    else:
        raise AssertionError("even n accepted")

    assert all(hnn.check_divisibility(n, m) for n in (1, 3, 5, 7) for m in range(1, 10))

    report = hnn.verify(2)
    assert report["checks"] and all(c["status"] == "pass" for c in report["checks"])

    assert hnn.quotient_p(3, 1)["order"] == 64
    assert hnn.quotient_nc(2)["order"] == 16
    assert hnn.quotient_q(2)["N"] == 2
    try:
        hnn.quotient_p(3, 2, cap=10)
    except ValueError as e:
        assert "cap exceeded" in str(e)
    else:
        raise AssertionError("cap not enforced")

    print("smoke test passed")


if __name__ == "__main__":
    main()
