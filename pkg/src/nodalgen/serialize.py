"""Deterministic rendering of result documents as text, JSON, or CSV.

Every command produces a plain dict ("doc") first; the three renderers are
pure functions of that dict, so identical configurations yield byte-identical
output.  All big integers and rationals are carried as decimal strings,
never as native numbers: Severi degrees overflow 64-bit machine words from
about degree 10 onward.
"""

from __future__ import annotations

import io
import json


def to_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def from_json(text):
    return json.loads(text)


def _series_lines(doc, out):
    v = doc["valuation"]
    coeffs = doc["coefficients"]
    if not coeffs:
        out.append("0 + O(q^%d)" % doc["precision"])
        return
    parts = []
    for i, c in enumerate(coeffs):
        if c == "0":
            continue
        n = v + i
        if n == 0:
            parts.append("(%s)" % c if " " in c else c)
        else:
            mono = "q" if n == 1 else "q^%d" % n
            parts.append("(%s)*%s" % (c, mono) if " " in c else "%s*%s" % (c, mono))
    parts.append("O(q^%d)" % doc["precision"])
    out.append(" + ".join(parts))


def to_text(doc) -> str:
    out = []
    kind = doc.get("type", "")
    if kind == "series":
        _series_lines(doc["series"], out)
    elif kind == "value":
        out.append(str(doc["value"]))
    elif kind == "severi":
        out.append("N(d=%s, delta=%s) = %s" % (doc["d"], doc["delta"], doc["value"]))
    elif kind == "severi_table":
        for row in doc["entries"]:
            out.append("N(d=%s, delta=%s) = %s" % (row["d"], row["delta"], row["value"]))
    elif kind == "universal_polynomials":
        for row in doc["entries"]:
            out.append("T_%d = %s" % (row["delta"], row["text"]))
    elif kind == "node_polynomial":
        out.append("P_%d(d), coefficients by ascending power:" % doc["delta"])
        out.append("  " + " ".join(doc["polynomial"]["coefficients"]))
    elif kind == "q_polynomial":
        out.append("Q_%d(delta), coefficients by ascending power:" % doc["mu"])
        out.append("  " + " ".join(doc["polynomial"]["coefficients"]))
    elif kind == "fit_result":
        out.append("fit: max_delta=%d degrees=%s" % (doc["max_delta"],
                                                     ",".join(map(str, doc["degrees"]))))
        for name in ("C1", "C2", "C3"):
            out.append("%s = %s" % (name, " ".join(doc[name])))
        out.append("B1 coefficients: %s" % " ".join(doc["B1"]["coefficients"]))
        out.append("B2 coefficients: %s" % " ".join(doc["B2"]["coefficients"]))
        out.append("residual pairs checked: %d, all zero: %s"
                   % (doc["residual_pairs"], str(doc["consistent"]).lower()))
        if "c1_check" in doc:
            out.append("three-degree C1 check: %s"
                       % ("passed" if doc["c1_check"] else "failed"))
    elif kind == "ruled_predictions":
        for row in doc["entries"]:
            out.append("t_%d = %s%s" % (row["delta"], row["value"],
                                        "" if row["valid"] else "  (outside validity window)"))
    elif kind == "verify_report":
        for c in doc["checks"]:
            out.append("%-32s %s  [%s]  %.3fs  %s"
                       % (c["name"], "PASS" if c["passed"] else "FAIL",
                          c["source"], c["seconds"], c["detail"]))
        out.append("result: %s" % ("all checks passed" if doc["all_passed"]
                                   else "FAILURES PRESENT"))
    elif kind == "cache_info":
        out.append("cache %s: %s entries" % (doc["path"], doc["entries"]))
    else:
        out.append(json.dumps(doc, sort_keys=True))
    return "\n".join(out) + "\n"


def _csv(rows) -> str:
    import csv

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def to_csv(doc) -> str:
    kind = doc.get("type", "")
    if kind == "series":
        s = doc["series"]
        rows = [("power", "coefficient")]
        for i, c in enumerate(s["coefficients"]):
            rows.append((s["valuation"] + i, c))
        return _csv(rows)
    if kind == "value":
        return _csv([("value",), (doc["value"],)])
    if kind == "severi":
        return _csv([("d", "delta", "value"),
                     (doc["d"], doc["delta"], doc["value"])])
    if kind == "severi_table":
        rows = [("d", "delta", "value")]
        rows += [(r["d"], r["delta"], r["value"]) for r in doc["entries"]]
        return _csv(rows)
    if kind == "universal_polynomials":
        rows = [("delta", "x_exp", "y_exp", "z_exp", "t_exp", "coefficient")]
        for entry in doc["entries"]:
            for term in entry["terms"]:
                rows.append((entry["delta"], *term["exponents"],
                             term["coefficient"]))
        return _csv(rows)
    if kind in ("node_polynomial", "q_polynomial"):
        rows = [("power", "coefficient")]
        rows += list(enumerate(doc["polynomial"]["coefficients"]))
        return _csv(rows)
    if kind == "fit_result":
        rows = [("component", "index", "value")]
        for name in ("C1", "C2", "C3"):
            rows += [(name, i, c) for i, c in enumerate(doc[name])]
        for name in ("B1", "B2"):
            s = doc[name]
            rows += [(name, s["valuation"] + i, c)
                     for i, c in enumerate(s["coefficients"])]
        return _csv(rows)
    if kind == "ruled_predictions":
        rows = [("delta", "value", "valid")]
        rows += [(r["delta"], r["value"], r["valid"]) for r in doc["entries"]]
        return _csv(rows)
    if kind == "verify_report":
        rows = [("name", "source", "passed", "seconds", "detail")]
        rows += [(c["name"], c["source"], c["passed"], c["seconds"], c["detail"])
                 for c in doc["checks"]]
        return _csv(rows)
    if kind == "cache_info":
        return _csv([("path", "entries"), (doc["path"], doc["entries"])])
    raise ValueError("no CSV rendering for document type %r" % kind)


def render(doc, fmt: str) -> str:
    if fmt == "json":
        return to_json(doc)
    if fmt == "csv":
        return to_csv(doc)
    if fmt == "text":
        return to_text(doc)
    raise ValueError("unknown output format %r" % fmt)
