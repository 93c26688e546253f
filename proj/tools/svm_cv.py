#!/usr/bin/env python3
"""C-SVM cross-validation on a precomputed-kernel file written by `htak compute
--format svm-precomputed`.

Each line is `<label> 0:<serial> 1:<K(i,1)> ... T:<K(i,T)>`. For every
repetition the script runs stratified k-fold CV; the C parameter is chosen
by an inner stratified CV on the training part of each outer fold (nested),
from a coarse logarithmic grid. Prints one summary line and, with --json,
a machine-readable record.
"""

import argparse
import json
import sys

import numpy as np
from sklearn.model_selection import StratifiedKFold
from sklearn.svm import SVC

C_GRID = [10.0**e for e in range(-3, 4)]


def read_precomputed(path):
    labels, rows = [], []
    with open(path) as fh:
        for line_no, line in enumerate(fh, 1):
            parts = line.split()
            if not parts:
                continue
            labels.append(int(parts[0]))
            entries = dict(tok.split(":", 1) for tok in parts[1:])
            serial = int(entries.pop("0"))
            if serial != len(rows) + 1:
                sys.exit(f"{path}:{line_no}: serial {serial} out of order")
            rows.append([float(entries[str(j)]) for j in range(1, len(entries) + 1)])
    gram = np.array(rows)
    if gram.shape[0] != gram.shape[1]:
        sys.exit(f"{path}: kernel matrix is not square")
    return gram, np.array(labels)


def fold_accuracy(gram, y, train, test, c):
    clf = SVC(kernel="precomputed", C=c)
    clf.fit(gram[np.ix_(train, train)], y[train])
    return float(np.mean(clf.predict(gram[np.ix_(test, train)]) == y[test]))


def pick_c(gram, y, train, inner_folds, seed):
    cv = StratifiedKFold(n_splits=inner_folds, shuffle=True, random_state=seed)
    best_c, best_acc = C_GRID[0], -1.0
    for c in C_GRID:
        accs = [fold_accuracy(gram, y, train[a], train[b], c) for a, b in cv.split(train, y[train])]
        if np.mean(accs) > best_acc:
            best_c, best_acc = c, float(np.mean(accs))
    return best_c


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("kernel_file")
    ap.add_argument("--folds", type=int, default=10)
    ap.add_argument("--inner-folds", type=int, default=5)
    ap.add_argument("--repeats", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    gram, y = read_precomputed(args.kernel_file)
    repeat_acc = []
    chosen = []
    for r in range(args.repeats):
        outer = StratifiedKFold(n_splits=args.folds, shuffle=True, random_state=args.seed + r)
        accs = []
        for train, test in outer.split(np.zeros(len(y)), y):
            c = pick_c(gram, y, train, args.inner_folds, args.seed + r)
            chosen.append(c)
            accs.append(fold_accuracy(gram, y, train, test, c))
        repeat_acc.append(float(np.mean(accs)))

    mean = float(np.mean(repeat_acc))
    stderr = float(np.std(repeat_acc, ddof=1) / np.sqrt(len(repeat_acc))) if len(repeat_acc) > 1 else 0.0
    if args.json:
        print(json.dumps({"accuracy": mean, "stderr": stderr, "repeats": repeat_acc, "chosen_c": chosen}))
    else:
        print(f"C-SVM accuracy: {100 * mean:.2f} +- {100 * stderr:.2f} ({args.repeats} x {args.folds}-fold, nested C)")


if __name__ == "__main__":
    main()
