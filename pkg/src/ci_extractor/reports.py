"""Report assembly: CSV tables, tag distributions, histograms, JSON summary.

Reports include static reference columns from the published OPP-115
evaluation (36 real policies, expert gold labels, full external models).
Those numbers are reproduced for comparison only; they are not attainable
from the bundled fixture corpus.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from ci_extractor.evaluate import ParamScore, PolicyF1Histogram, TagShare

#: Published reference scores, per method and parameter: (recall, precision, f1).
#: QA/DP/SRL/CI-SRL rows are phrase-level macro averages; HMM/BERT rows are
#: word-level over the whole test set.
REFERENCE_SCORES: dict[str, dict[str, tuple[float, float, float]]] = {
    "qa": {
        "Attribute": (0.21, 0.14, 0.17),
        "Receiver": (0.07, 0.06, 0.06),
        "Sender": (0.03, 0.02, 0.03),
        "Subject": (0.06, 0.02, 0.03),
        "TP": (0.21, 0.16, 0.18),
    },
    "hmm": {
        "Attribute": (0.65, 0.59, 0.62),
        "Receiver": (0.41, 0.50, 0.45),
        "Sender": (0.06, 0.16, 0.09),
        "TP": (0.81, 0.66, 0.73),
    },
    "bert": {
        "Attribute": (0.59, 0.43, 0.50),
        "Receiver": (0.52, 0.32, 0.39),
        "Sender": (0.13, 0.14, 0.13),
        "TP": (0.78, 0.58, 0.67),
    },
    "dp": {
        "Attribute": (0.68, 0.43, 0.53),
        "Subject": (0.79, 0.26, 0.40),
        "TP": (0.76, 0.62, 0.68),
    },
    "srl": {
        "Attribute": (0.93, 0.72, 0.81),
        "Receiver": (0.94, 0.75, 0.83),
        "Sender": (0.95, 0.64, 0.76),
        "TP": (0.91, 0.71, 0.80),
    },
    "ci-srl": {
        "Attribute": (0.91, 0.77, 0.83),
        "Receiver": (0.88, 0.79, 0.84),
        "Sender": (0.91, 0.74, 0.82),
        "TP": (0.90, 0.84, 0.87),
    },
}

#: Published reference corpus statistics.
REFERENCE_CORPUS = {
    "policies": 36,
    "statements": 2268,
    "valid_statements": 778,
    "ci_parameters": 3245,
    "mean_valid_per_policy": 18,
    "min_valid_per_policy": 4,
    "max_valid_per_policy": 43,
}

#: Published per-policy F1 narrative: most policies score in the 80-90 band.
REFERENCE_POLICY_F1 = {"majority_bin": "80-90", "majority_count": 26}

SCORING_NOTES = [
    "Macro averages skip a parameter for statements where neither gold nor "
    "prediction has a span for it; otherwise empty denominators score 0.",
    "F1 is computed from the macro-averaged precision and recall, not from "
    "per-statement F1 values.",
    "Actor spans are excluded from per-parameter scores and appear only in "
    "the source-tag distributions.",
    "Reference columns restate the published OPP-115 evaluation and are not "
    "reproducible from the bundled fixture corpus.",
]


def write_scores_csv(rows: list[tuple[str, ParamScore]], path: str | Path) -> None:
    """One row per (method, parameter), with reference columns when known."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(
            ["method", "param", "mode", "recall", "precision", "f1", "support",
             "ref_recall", "ref_precision", "ref_f1"]
        )
        for method, score in rows:
            reference = REFERENCE_SCORES.get(method, {}).get(score.param.value)
            ref_cells = (
                [f"{v:.2f}" for v in reference] if reference else ["", "", ""]
            )
            writer.writerow(
                [
                    method,
                    score.param.value,
                    score.mode.value,
                    f"{score.recall:.4f}",
                    f"{score.precision:.4f}",
                    f"{score.f1:.4f}",
                    score.support,
                ]
                + ref_cells
            )


def write_tag_distribution_csv(shares: list[TagShare], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["tag", "total", "matched", "tp_pct", "fp_pct"])
        for share in shares:
            writer.writerow(
                [share.tag, share.total, share.matched,
                 f"{share.tp_pct:.2f}", f"{share.fp_pct:.2f}"]
            )


def write_policy_histogram_csv(histogram: PolicyF1Histogram, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["bin", "count"])
        for label, count in histogram.bins:
            writer.writerow([label, count])
        writer.writerow([])
        writer.writerow(["policy_id", "f1"])
        for policy_id, value in histogram.policy_f1.items():
            writer.writerow([policy_id, f"{value:.4f}"])


def scores_to_dict(scores: list[ParamScore]) -> dict:
    return {
        s.param.value: {
            "recall": round(s.recall, 4),
            "precision": round(s.precision, 4),
            "f1": round(s.f1, 4),
            "support": s.support,
            "mode": s.mode.value,
        }
        for s in scores
    }


def write_summary_json(payload: dict, path: str | Path) -> None:
    payload = dict(payload)
    payload["reference"] = {
        "scores": REFERENCE_SCORES,
        "corpus": REFERENCE_CORPUS,
        "per_policy_f1": REFERENCE_POLICY_F1,
    }
    payload["notes"] = SCORING_NOTES
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(payload, handle, ensure_ascii=False, sort_keys=True, indent=2)
        handle.write("\n")
