import io
import subprocess
import sys

import pytest

from relconn.cli import main

LOOP = "functor PLTS labels=a\nstates s0\ns0: a->s0\n"
DEAD = "functor PLTS labels=a\nstates t0\n"
SPEC = "functor SUSP in=i out=o,p\nstates s0 s1\ns0: i->s1 o->s0\ns1: o->s1 p->s0\n"
IMPL_OK = "functor SUSPIE in=i out=o,p\nstates t0 t1\nt0: i->t1 o->t0\nt1: i->t1 o->t1\n"
IMPL_BAD = "functor SUSPIE in=i out=o,p\nstates t0\nt0: i->t0 p->t0\n"
SPEC2 = "functor SUSP in=i out=o,p\nstates u0\nu0: p->u0\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_gsim_holds(files):
    code, out = run("gsim", "--left", files("l.chc", LOOP), "--right", files("r.chc", LOOP),
                    "--connector", files("c.sexp", "(id)"), "--pair", "s0", "s0")
    assert code == 0 and "s0\ts0" in out


def test_gsim_fails_with_counterexample(files):
    code, out = run("gsim", "--left", files("l.chc", LOOP), "--right", files("r.chc", DEAD),
                    "--connector", files("c.sexp", "(kant ((dia a) (dia a)))"),
                    "--pair", "s0", "t0")
    assert code == 1
    assert "pair: s0 t0" in out and "round: 1" in out and "clause: forth" in out


def test_gsim_writes_out_file(files, tmp_path):
    dest = tmp_path / "rel.tsv"
    code, _ = run("gsim", "--left", files("l.chc", DEAD), "--right", files("r.chc", LOOP),
                  "--connector", files("c.sexp", "(lf)"), "--out", str(dest))
    assert code == 0 and dest.read_text() == "t0\ts0\n"


def test_missing_file_is_usage_error(files):
    code, _ = run("gsim", "--left", "/nonexistent.chc", "--right", files("r.chc", LOOP),
                  "--connector", files("c.sexp", "(id)"))
    assert code == 2


def test_bad_arguments_are_usage_errors():
    assert run("gsim")[0] == 2
    assert run("frobnicate")[0] == 2


def test_unknown_state_is_usage_error(files):
    code, _ = run("gsim", "--left", files("l.chc", LOOP), "--right", files("r.chc", LOOP),
                  "--connector", files("c.sexp", "(id)"), "--pair", "s0", "nope")
    assert code == 2


def test_distinguish(files):
    lam = files("k.sexp", "(kant ((dia a) (dia a)))")
    code, out = run("distinguish", "--left", files("l.chc", LOOP), "--right",
                    files("r.chc", DEAD), "--connector-lambda", lam, "--pair", "s0", "t0")
    assert code == 1 and out.splitlines()[0] == "<dia(a),dia(a)>T"
    code, out = run("distinguish", "--left", files("l.chc", LOOP), "--right",
                    files("r2.chc", LOOP), "--connector-lambda", lam, "--pair", "s0", "s0")
    assert code == 0 and out.strip() == "similar"
    code, _ = run("distinguish", "--left", files("l.chc", LOOP), "--right", files("r.chc", LOOP),
                  "--connector-lambda", files("i.sexp", "(id)"), "--pair", "s0", "s0")
    assert code == 2


def test_ioco(files):
    spec = files("spec.chc", SPEC)
    assert run("ioco", "--spec", spec, "--impl", files("ok.chc", IMPL_OK))[0] == 0
    code, out = run("ioco", "--spec", spec, "--impl", files("bad.chc", IMPL_BAD))
    assert code == 1 and "pair: s0 t0" in out
    code, out = run("ioco", "--spec", spec, "--compat", files("s2.chc", SPEC2),
                    "--pair", "s0", "u0")
    assert code == 1
    assert run("ioco", "--spec", files("ok2.chc", IMPL_OK), "--impl", spec)[0] == 2


def test_cap_exceeded_exit_code(files):
    wide = "functor PLTS labels=a\nstates s0 s1 s2\ns0: a->s0 a->s1 a->s2\ns1:\ns2:\n"
    code, _ = run("gsim", "--left", files("l.chc", wide), "--right", files("r.chc", wide),
                  "--connector", files("c.sexp", "(kant ((dia a) (dia a)))"),
                  "--support-cap", "2")
    assert code == 3


def test_aut_input(files):
    aut = files("l.aut", 'des (0,1,2)\n(0,"a",1)\n')
    code, out = run("gsim", "--left", aut, "--right", aut,
                    "--connector", files("c.sexp", "(id)"), "--pair", "s0", "s0")
    assert code == 0


def test_selftest_default_and_deterministic():
    code, out = run("selftest")
    assert code == 0
    assert sum(line.startswith("PASS") for line in out.splitlines()) >= 14
    assert run("selftest", "--seed", "5", "--cases", "4")[1] == \
        run("selftest", "--seed", "5", "--cases", "4")[1]
    assert run("selftest", "--max-states", "1")[0] == 0


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "relconn", "gsim", "--left", files("l.chc", LOOP),
                           "--right", files("r.chc", LOOP), "--connector",
                           files("c.sexp", "(id)")], capture_output=True, text=True)
    assert proc.returncode == 0 and "pairs: 1" in proc.stdout
