"""Check the Arrow axioms for every built-in rule family and trace the dictator search.

    python scripts/arrow_suite.py [--max-n 3]
"""

import argparse

from impossibility_lab.decisive import find_dictator
from impossibility_lab.errors import PreconditionFailed
from impossibility_lab.scf import ScfRule, check_iia_pairwise, check_pareto, find_dictatorship


def rules(n, m):
    yield from (ScfRule.dictator(i, n, m) for i in range(n))
    yield ScfRule.constant(tuple(range(m)), n)
    yield from (ScfRule(kind, n, m) for kind in ("borda-lex", "plurality-lex", "copeland-lex"))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=3)
    parser.add_argument("--m", type=int, default=3)
    args = parser.parse_args()
    print(f"{'rule':<16}{'n':>3}  pareto  iia    dictator  contraction")
    for n in range(2, args.max_n + 1):
        for rule in rules(n, args.m):
            pareto = check_pareto(rule, max_witnesses=1).holds
            iia = check_iia_pairwise(rule, max_witnesses=1).holds
            dictator = find_dictatorship(rule)
            try:
                i, cert = find_dictator(rule)
                chain = " -> ".join(str(sorted(s.parent)) for s in cert.chain) + f" -> [{i}]"
            except PreconditionFailed as exc:
                chain = f"({exc})"
            print(f"{rule.describe():<16}{n:>3}  {str(pareto):<7} {str(iia):<6} {str(dictator):<9} {chain}")


if __name__ == "__main__":
    main()
