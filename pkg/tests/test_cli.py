import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from motmoore.cli import run

SCHEMA = json.loads(resources.files("motmoore").joinpath("schemas", "cli.schema.json").read_text())


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def check(defn, obj):
    schema = dict(SCHEMA)
    schema["$ref"] = "#/$defs/%s" % defn
    jsonschema.validate(obj, schema)


CASES = [
    ("gw", ["gw", "--field", "R", "--form", "<1,-1,1>"]),
    ("kmw", ["kmw", "--field", "Fq:5", "--word", "eta*h"]),
    ("kmw", ["kmw", "--field", "Fq:5", "--degree", "-1", "--ideal", "2,eta^2"]),
    ("pi", ["pi", "--k", "3", "--w", "2", "--field", "C"]),
    ("pi", ["pi", "--k", "1", "--w", "0"]),
    ("pi-moore", ["pi-moore", "--field", "Fq:5", "--alpha", "n_eps:5", "--k", "0", "--w", "0"]),
    ("mult", ["mult", "--alpha", "n_eps:6"]),
    ("mult", ["mult", "--field", "R", "--alpha", "2+11h"]),
    ("toda", ["toda", "--field", "Fq:5", "--bracket", "eta_h_eta"]),
    ("toda", ["toda", "--field", "R", "--bracket", "real_2p11h", "--lift"]),
    ("cohomology", ["cohomology", "--field", "R", "--p", "0", "--q", "2", "--op", "Q1"]),
    ("slices", ["slices", "--spectrum", "moore_nh", "--n", "3", "--q", "2"]),
    ("d1", ["d1", "--spectrum", "kq_2", "--q", "5", "--j", "5"]),
    ("e2", ["e2", "--spectrum", "kq", "--field", "Fq:5", "--window", "s=1,w=0,q=0..3"]),
]


@pytest.mark.parametrize("defn,argv", CASES, ids=[" ".join(a[:3]) for _, a in CASES])
def test_outputs_match_schema(defn, argv):
    code, text = call(*argv)
    assert code == 0, text
    check(defn, json.loads(text))


@pytest.mark.parametrize("defn,argv", CASES[:8], ids=[" ".join(a[:3]) for _, a in CASES[:8]])
def test_deterministic(defn, argv):
    assert call(*argv) == call(*argv)


def test_pi_example():
    code, text = call("pi", "--k", "3", "--w", "2", "--field", "C")
    obj = json.loads(text)
    assert code == 0 and obj["group"] == "Z/24" and obj["generator"] == "nu"


def test_mult_example():
    obj = json.loads(call("mult", "--alpha", "n_eps:6")[1])
    assert obj["answer"] == "No" and obj["rule"] == "n-eps"


def test_refusal_not_determined():
    code, text = call("pi", "--k", "2", "--w", "-3", "--field", "R")
    obj = json.loads(text)
    assert code == 2 and obj["refusal"] == "not determined"
    check("refusal", obj)


def test_refusal_not_modeled():
    code, text = call("cohomology", "--field", "Q:3", "--p", "0", "--q", "1")
    assert code == 2
    obj = json.loads(text)
    assert obj["refusal"] == "not modeled"
    check("refusal", obj)


def test_precondition_refusal():
    code, text = call("toda", "--field", "C", "--bracket", "real_2p11h")
    assert code == 2 and json.loads(text)["refusal"] == "precondition"


@pytest.mark.parametrize("argv", [[], ["pi", "--k", "3"], ["gw", "--field", "Fq:4", "--form", "<1>"],
                                  ["nope"], ["e2", "--spectrum", "kq", "--field", "R",
                                             "--window", "x=1"]])
def test_usage_errors(argv):
    code, text = call(*argv)
    assert code == 1
    check("usage", json.loads(text))


def test_text_format():
    code, text = call("--format", "text", "pi", "--k", "3", "--w", "2", "--field", "C")
    assert code == 0 and "Z/24" in text and not text.lstrip().startswith("{")


def test_selftest():
    code, text = call("selftest")
    obj = json.loads(text)
    check("selftest", obj)
    assert code == 0 and obj["pass"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "motmoore", "mult", "--alpha", "eta"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["answer"] == "No"
