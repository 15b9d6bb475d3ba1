"""Ten-statement scoring fixture with hand-computed expected tables.

Every expected number below was worked out on paper from the span geometry
(per-statement tp/fp/fn, then the arithmetic written in the comments) and is
frozen to four decimals.  All statements are 10 tokens long.
"""

from __future__ import annotations

from ci_extractor.corpus import CIParam, FlowAnnotation, Span

A = CIParam.ATTRIBUTE
TP = CIParam.TP
R = CIParam.RECEIVER
S = CIParam.SENDER

STATEMENT_LENGTH = 10

# statement id -> (gold spans, predicted spans)
CASES: dict[str, tuple[list[tuple[CIParam, int, int]], list[tuple[CIParam, int, int]]]] = {
    "m1": ([(A, 0, 3)], [(A, 0, 3)]),                      # exact hit
    "m2": ([(A, 0, 4)], [(A, 1, 3)]),                      # partial hit
    "m3": ([(A, 0, 2)], [(A, 0, 2), (A, 5, 7)]),           # hit + stray
    "m4": ([(A, 2, 4), (TP, 5, 9)], [(TP, 5, 9)]),         # missed attribute
    "m5": ([(TP, 0, 5)], [(TP, 1, 4)]),                    # partial TP
    "m6": ([(R, 0, 1)], [(R, 0, 1), (S, 3, 4)]),           # stray sender
    "m7": ([(S, 2, 3)], [(S, 2, 3)]),                      # exact sender
    "m8": ([(A, 1, 5)], [(A, 1, 3), (A, 3, 5)]),           # split prediction
    "m9": ([(A, 0, 2), (A, 4, 6)], [(A, 0, 6)]),           # merged prediction
    "m10": ([(TP, 2, 6)], [(TP, 2, 6), (A, 0, 1)]),        # stray attribute
}


def annotations(method: str = "test") -> tuple[list[FlowAnnotation], list[FlowAnnotation]]:
    golds, preds = [], []
    for sid, (gold, pred) in CASES.items():
        golds.append(
            FlowAnnotation(sid, "gold", [Span(s, e, p, "gold") for p, s, e in gold],
                           valid=True)
        )
        preds.append(
            FlowAnnotation(sid, method, [Span(s, e, p, method) for p, s, e in pred])
        )
    return preds, golds


# Overlap, phrase level, macro over statements.
# Attribute contributes on m1 m2 m3 m4 m8 m9 m10 (7 statements):
#   P: (1 + 1 + 1/2 + 0 + 1/2 + 1 + 0) / 7 = 4/7      = 0.5714
#   R: (1 + 1 + 1   + 0 + 1   + 1/2 + 0) / 7 = 4.5/7  = 0.6429
#   F1: 2*P*R/(P+R) = 36/59.5                         = 0.6050
EXPECTED_PHRASE_OVERLAP = {
    A: (0.6429, 0.5714, 0.6050, 7),
    TP: (1.0, 1.0, 1.0, 3),       # m4, m5, m10 all perfect under overlap
    R: (1.0, 1.0, 1.0, 1),        # m6
    S: (0.5, 0.5, 0.5, 2),        # m6 stray (0) + m7 exact (1)
}

# Exact, phrase level, macro over statements.
# Attribute: P = (1+0+1/2+0+0+0+0)/7 = 1.5/7 = 0.2143
#            R = (1+0+1+0+0+0+0)/7   = 2/7   = 0.2857
#            F1 = 12/49              = 0.2449
# TP: m4 (1,1), m5 (0,0), m10 (1,1) -> 2/3 across the board.
EXPECTED_PHRASE_EXACT = {
    A: (0.2857, 0.2143, 0.2449, 7),
    TP: (0.6667, 0.6667, 0.6667, 3),
    R: (1.0, 1.0, 1.0, 1),
    S: (0.5, 0.5, 0.5, 2),
}

# Word level, pooled over the whole fixture (support = gold token count).
# Attribute: tp=15 fp=5 fn=4 -> P=15/20, R=15/19, F1=30/39
# TP:        tp=11 fp=0 fn=2 -> P=1, R=11/13, F1=22/24
# Sender:    tp=1  fp=1 fn=0 -> P=1/2, R=1, F1=2/3
EXPECTED_WORD_LEVEL = {
    A: (0.7895, 0.7500, 0.7692, 19),
    TP: (0.8462, 1.0, 0.9167, 13),
    R: (1.0, 1.0, 1.0, 1),
    S: (1.0, 0.5, 0.6667, 1),
}
