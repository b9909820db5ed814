# Licensed under the Apache License, Version 2.0 (see
# LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

"""Rebuild fixtures/lmfdb offline from the Cremona tables shipped with PARI.

LMFDB labels are assigned by sorting the isogeny classes of a conductor by
their a_p sequence and the curves of a class by their reduced minimal
a-invariants. Needs cypari2 and the PARI elldata package.
"""

import argparse
import decimal
import json
import os
import pathlib

import cypari2

SCHEMA = "bsdtwins-lmfdb/1"
LABELS = [f"38025.{c}{i}" for c in ("ck", "t", "u", "cl") for i in (1, 2)]
LABELS += [f"207025.{c}{i}" for c in ("bf", "bu", "cj") for i in (1, 2)]
LABELS += ["4225.h1", "4225.h2"]


def class_letters(i):
    s = ""
    while True:
        s = chr(97 + i % 26) + s
        i //= 26
        if i == 0:
            return s


def kodaira(code):
    fixed = {1: "I0", 2: "II", 3: "III", 4: "IV", -1: "I0*", -2: "II*", -3: "III*", -4: "IV*"}
    if code in fixed:
        return fixed[code]
    return f"I{code - 4}" if code > 4 else f"I{-code - 4}*"


def lmfdb_labels(pari, conductor):
    classes = {}
    for entry in pari(f"ellsearch({conductor})"):
        classes.setdefault(str(entry[0]).rstrip("0123456789"), []).append([int(a) for a in entry[1]])
    keyed = []
    for curves in classes.values():
        e = pari.ellinit(curves[0])
        keyed.append(([int(pari.ellap(e, p)) for p in pari.primes(40)], sorted(curves)))
    keyed.sort()
    out = {}
    for i, (_, curves) in enumerate(keyed):
        for k, a in enumerate(curves):
            out[f"{conductor}.{class_letters(i)}{k + 1}"] = a
    return out


def record(pari, label, ainvs):
    e = pari.ellinit(ainvs)
    red = pari.ellglobalred(e)
    local = []
    for p in [int(q) for q in pari.factor(red[0])[0]]:
        lr = pari.elllocalred(e, p)
        local.append({"p": p, "tamagawa": int(lr[3]), "kodaira": kodaira(int(lr[1]))})
    omega = pari.real(e.omega()[0]) * (2 if int(e.disc()) > 0 else 1)
    j = pari(e.j())
    return {
        "label": label,
        "ainvs": ainvs,
        "conductor": int(red[0]),
        "min_discriminant": str(int(e.disc())),
        "torsion_structure": [int(n) for n in pari.elltors(e)[1]],
        "local": local,
        "real_period": format(decimal.Decimal(str(omega).replace(" E", "E")), ".20g"),
        "j_invariant": str(j),
    }


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="fixtures/lmfdb")
    args = parser.parse_args()
    pari = cypari2.Pari()
    pari.set_real_precision(60)
    if "GP_DATA_DIR" in os.environ:
        pari.default("datadir", os.environ["GP_DATA_DIR"])
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    by_conductor = {}
    for label in LABELS:
        n = int(label.split(".")[0])
        if n not in by_conductor:
            by_conductor[n] = lmfdb_labels(pari, n)
        doc = {
            "schema": SCHEMA,
            "source": f"PARI/GP {pari.version()[0]}.{pari.version()[1]}.{pari.version()[2]} Cremona tables (elldata), labels by a_p and a-invariant order",
            "record": record(pari, label, by_conductor[n][label]),
        }
        (out / f"{label}.json").write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
