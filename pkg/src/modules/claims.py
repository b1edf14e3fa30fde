"""Named Claims and the Verification Corpus

Fixed table of concrete statements about small groups (memberships,
non-memberships, clique numbers, Sylow counts, an explicit twelve-pair
obstruction) evaluated against the obstruction search, plus the structural
checks of theorems.py run over every corpus group.

A handful of A5 memberships conflict with the capacity analysis of its twin
classes; those are computed with both the class search and the packing oracle
and reported as DISPUTED-AGREE / DISPUTED-DISAGREE, never asserted.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple
import logging

from .errors import InvariantViolation, SpecError
from .families import build_group
from .group import ElementSet, FiniteGroup
from .ingest import ingest_permutations
from .invariants import GroupInvariants
from .obstruction import DecisionStatus, ObstructionCert, SearchBudget, verify_certificate
from .packing import packing_oracle
from .settings import PROJECT_ROOT
from .theorems import CheckOutcome, CheckStatus, compare_spectra, run_paper_checks

logger = logging.getLogger(__name__)

FIXTURE_DIR = PROJECT_ROOT / "data" / "groups"


@dataclass(frozen=True)
class CorpusEntry:
    """A corpus group: name, how to build it, and how much to analyse."""

    name: str
    spec: str
    run_checks: bool = True


@dataclass(frozen=True)
class Claim:
    claim_id: str
    group: str
    kind: str
    m: int = 0
    n: int = 0
    expected: Tuple = ()


@dataclass
class CorpusReport:
    claims: List[CheckOutcome] = field(default_factory=list)
    checks: List[CheckOutcome] = field(default_factory=list)
    spectra: Dict[str, List[dict]] = field(default_factory=dict)

    @property
    def outcomes(self) -> List[CheckOutcome]:
        return self.claims + self.checks

    def count(self, status: CheckStatus) -> int:
        return sum(1 for o in self.outcomes if o.status is status)


def corpus_entries(include_s5: bool = False) -> List[CorpusEntry]:
    """Groups the report covers, in report order."""
    entries = [CorpusEntry(f"C{n}", f"C:{n}") for n in range(1, 25)]
    entries += [CorpusEntry(f"D{order}", f"D:{order}") for order in range(6, 25, 2)]
    entries += [
        CorpusEntry("Q8", "Q:8"),
        CorpusEntry("Q16", "Q:16"),
        CorpusEntry("S3", "S:3"),
        CorpusEntry("S4", "S:4"),
        CorpusEntry("A4", "A:4"),
        CorpusEntry("A5", "A:5"),
        CorpusEntry("S3xS3", "S:3*S:3"),
        CorpusEntry("Q8xS3", "Q:8*S:3"),
        CorpusEntry("Frob21", "fixture:frobenius21"),
        CorpusEntry("Heis27", "fixture:heisenberg27"),
        CorpusEntry("S4xC2", "S:4*C:2", run_checks=False),
        CorpusEntry("A5xC2", "A:5*C:2", run_checks=False),
    ]
    if include_s5:
        entries.append(CorpusEntry("S5", "S:5", run_checks=False))
    return entries


def load_corpus_group(spec: str, order_cap: int = 2000, **checks) -> FiniteGroup:
    """Build a group from a spec string; "fixture:<name>" reads data/groups/<name>.perm.

    Raises:
        SpecError: Unknown fixture name or malformed spec
    """
    if spec.startswith("fixture:"):
        name = spec.split(":", 1)[1]
        path = FIXTURE_DIR / f"{name}.perm"
        if not path.exists():
            raise SpecError(f"Unknown fixture {name!r}")
        return ingest_permutations(path.read_text(), order_cap=order_cap, origin=spec, **checks)
    return build_group(spec, order_cap=order_cap, **checks)


# Q8 labels: i = a, -i = a^3, j = b, -j = a^2b, k = ab, -k = a^3b
QUATERNION_LABELS = {"i": "a", "-i": "a^3", "j": "b", "-j": "a^2b", "k": "ab", "-k": "a^3b"}
TWELVE_PAIRS = [
    [(q, s), (f"-{q}", s)]
    for q in ("i", "j", "k")
    for s in ("(1,2)", "(1,3)", "(2,3)", "(1,2,3)")
]


def twelve_pair_obstruction(group: FiniteGroup) -> ObstructionCert:
    """The explicit (12,2)-obstruction of Q8 x S3 built from element labels."""
    parts = []
    for pair in TWELVE_PAIRS:
        parts.append([group.index_of(f"({QUATERNION_LABELS[q]},{s})") for q, s in pair])
    return ObstructionCert(tuple(tuple(p) for p in parts))


def claims_table(include_s5: bool = False) -> List[Claim]:
    """The fixed claims, sorted by claim id."""
    claims = [
        Claim("S3.T(2,3)", "S3", "member", 2, 3),
        Claim("S3.T(3,2)", "S3", "member", 3, 2),
        Claim("S3.w", "S3", "clique", expected=(4,)),
        Claim("S3.sharpness", "S3", "sharpness"),
        Claim("D8.T(4,1)", "D8", "member", 4, 1),
        Claim("Q8.T(4,1)", "Q8", "member", 4, 1),
        Claim("D8.w", "D8", "clique", expected=(3,)),
        Claim("Q8.w", "Q8", "clique", expected=(3,)),
        Claim("S3xS3.notT(3,2)", "S3xS3", "non-member", 3, 2),
        Claim("S3xS3.T(7,3)", "S3xS3", "disputed", 7, 3),
        Claim("Q8xS3.notT(12,2)", "Q8xS3", "non-member", 12, 2),
        Claim("Q8xS3.T(13,2)", "Q8xS3", "member", 13, 2),
        Claim("Q8xS3.certificate", "Q8xS3", "certificate", 12, 2),
        Claim("S4.T(14,1)", "S4", "member", 14, 1),
        Claim("S4.T(11,2)", "S4", "member", 11, 2),
        Claim("S4.T(6,3)", "S4", "member", 6, 3),
        Claim("S4.T(4,5)", "S4", "member", 4, 5),
        Claim("S4.T(3,7)", "S4", "member", 3, 7),
        Claim("S4.spectrum", "S4", "spectrum", expected=((14, 1), (11, 2), (6, 3), (4, 5), (3, 7))),
        Claim("S4.sub(A4)", "S4", "subgroup", expected=("derived",)),
        Claim("S3xS3.sub(S3x1)", "S3xS3", "subgroup", expected=("generated:((1,2),());((1,2,3),())",)),
        Claim("S4.quot(V4)", "S4", "quotient", expected=("normal:4",)),
        Claim("D8.quot(Z)", "D8", "quotient", expected=("center",)),
        Claim("S4xC2.w", "S4xC2", "clique-product", expected=("S4",)),
        Claim("A5.w", "A5", "clique", expected=(21,)),
        Claim("A5.sylow", "A5", "sylow", expected=((2, 5), (3, 10), (5, 6))),
        Claim("A5xC2.w", "A5xC2", "clique-product", expected=("A5",)),
    ]
    for m, n in ((22, 1), (22, 2), (17, 3), (14, 4)):
        claims.append(Claim(f"A5.T({m},{n})", "A5", "member", m, n))
    for m, n in ((21, 2), (16, 3), (13, 4), (8, 6), (7, 8)):
        claims.append(Claim(f"A5.notT({m},{n})", "A5", "non-member", m, n))
    for m, n in ((9, 5), (9, 6), (8, 7), (8, 8)):
        claims.append(Claim(f"A5.T({m},{n})", "A5", "disputed", m, n))

    for order in range(6, 25, 2):
        r = order // 2
        name = f"D{order}"
        claims.append(Claim(f"{name}.T(2,{r})", name, "member", 2, r))
        if r % 2 == 0:
            claims.append(Claim(f"{name}.T(2,{r - 1})", name, "member", 2, r - 1))
            claims.append(Claim(f"{name}.notT(2,{r - 2})", name, "non-member", 2, r - 2))
            claims.append(Claim(f"{name}.T({r // 2 + 2},1)", name, "member", r // 2 + 2, 1))
        else:
            claims.append(Claim(f"{name}.T({r + 2},1)", name, "member", r + 2, 1))

    # groups of order p^k lie in T(p^(k-1), p) and T(p, p^(k-1))
    for name, p, k in (("D8", 2, 3), ("Q8", 2, 3), ("D16", 2, 4), ("Q16", 2, 4), ("Heis27", 3, 3)):
        big = p ** (k - 1)
        claims.append(Claim(f"{name}.T({big},{p})", name, "member", big, p))
        claims.append(Claim(f"{name}.T({p},{big})", name, "member", p, big))

    if include_s5:
        claims.append(Claim("S5.w", "S5", "clique", expected=(0,)))

    unique = {c.claim_id: c for c in claims}
    return [unique[key] for key in sorted(unique)]


class ClaimEvaluator:
    """Builds corpus groups on demand and evaluates claims against them."""

    def __init__(self, budget: Optional[SearchBudget] = None, order_cap: int = 2000, include_s5: bool = False):
        self.budget = budget or SearchBudget()
        self.order_cap = order_cap
        self.entries = {e.name: e for e in corpus_entries(include_s5)}
        self._invariants: Dict[str, GroupInvariants] = {}
        logger.info(f"Claim evaluator initialized with {len(self.entries)} corpus groups")

    def invariants(self, name: str) -> GroupInvariants:
        if name not in self._invariants:
            group = load_corpus_group(self.entries[name].spec, self.order_cap)
            self._invariants[name] = GroupInvariants(group, self.budget)
        return self._invariants[name]

    def computed_spectra(self) -> Dict[str, List[dict]]:
        """Spectrum rows ({m, N, witness, ...}) already computed, keyed by corpus name."""
        return {
            name: [row.to_dict(inv.group) for row in inv.spectrum]
            for name, inv in self._invariants.items()
            if "spectrum" in inv.__dict__
        }

    def _oracles(self, inv: GroupInvariants, m: int, n: int) -> Tuple[Optional[bool], Optional[ObstructionCert], str]:
        """(is T(m,n) or None, certificate, note) from the class search and, when
        the twin partition is complete multipartite, the packing oracle.

        Raises:
            InvariantViolation: The two oracles disagree
        """
        decision = inv.decide(m, n)
        if decision.status is DecisionStatus.UNKNOWN:
            return None, None, f"search undecided after {decision.nodes} nodes"
        member = decision.status is DecisionStatus.IS_TMN
        note = f"class search {'exhausted' if member else 'found obstruction'} ({decision.nodes} nodes)"
        if inv.partition.complete_multipartite and inv.partition.classes:
            packed = packing_oracle(inv.partition.capacities, m, n).feasible
            if packed == member:
                raise InvariantViolation(
                    f"{inv.origin} T({m},{n}): class search says {member}, packing says {not packed}"
                )
            note += ", packing oracle agrees"
        return member, decision.certificate, note

    def evaluate(self, claim: Claim) -> CheckOutcome:
        """Evaluate one claim; never raises for budget exhaustion."""
        inv = self.invariants(claim.group)
        status, details = getattr(self, f"_eval_{claim.kind.replace('-', '_')}")(claim, inv)
        if status is CheckStatus.FAIL:
            logger.error(f"Claim {claim.claim_id} failed: {details}")
        elif status is CheckStatus.DISPUTED_DISAGREE:
            logger.warning(f"Claim {claim.claim_id} disputed: {details}")
        return CheckOutcome(claim.claim_id, inv.origin, status, details)

    def _eval_member(self, claim: Claim, inv: GroupInvariants):
        member, cert, note = self._oracles(inv, claim.m, claim.n)
        if member is None:
            return CheckStatus.UNKNOWN, note
        if member:
            return CheckStatus.PASS, note
        return CheckStatus.FAIL, f"obstruction {cert.describe(inv.group)}"

    def _eval_non_member(self, claim: Claim, inv: GroupInvariants):
        member, cert, note = self._oracles(inv, claim.m, claim.n)
        if member is None:
            return CheckStatus.UNKNOWN, note
        if member:
            return CheckStatus.FAIL, f"no ({claim.m},{claim.n})-obstruction exists; {note}"
        return CheckStatus.PASS, f"obstruction {cert.describe(inv.group)}; {note}"

    def _eval_disputed(self, claim: Claim, inv: GroupInvariants):
        member, cert, note = self._oracles(inv, claim.m, claim.n)
        if member is None:
            return CheckStatus.UNKNOWN, note
        if member:
            return CheckStatus.DISPUTED_AGREE, note
        return CheckStatus.DISPUTED_DISAGREE, f"obstruction {cert.describe(inv.group)}; {note}"

    def _eval_clique(self, claim: Claim, inv: GroupInvariants):
        w = inv.w
        labels = ", ".join(inv.group.labels[x] for x in inv.clique.witness)
        if claim.expected and claim.expected[0] and w != claim.expected[0]:
            return CheckStatus.FAIL, f"w = {w}, expected {claim.expected[0]}"
        return CheckStatus.PASS, f"w = {w}, witness {{{labels}}}"

    def _eval_clique_product(self, claim: Claim, inv: GroupInvariants):
        base = self.invariants(claim.expected[0])
        return (
            (CheckStatus.PASS, f"w = {inv.w} = w({claim.expected[0]})")
            if inv.w == base.w
            else (CheckStatus.FAIL, f"w = {inv.w} but w({claim.expected[0]}) = {base.w}")
        )

    def _eval_sylow(self, claim: Claim, inv: GroupInvariants):
        found = []
        for p, count in claim.expected:
            data = inv.sylow(p)
            found.append(f"v_{p} = {data.count} (trivial intersection {data.trivial_intersection})")
            if data.count != count or not data.trivial_intersection:
                return CheckStatus.FAIL, "; ".join(found) + f", expected v_{p} = {count} with trivial intersections"
        return CheckStatus.PASS, "; ".join(found)

    def _eval_certificate(self, claim: Claim, inv: GroupInvariants):
        cert = twelve_pair_obstruction(inv.group)
        check = verify_certificate(inv.group, cert, claim.m, claim.n)
        if not check.valid:
            return CheckStatus.FAIL, check.violation
        return CheckStatus.PASS, f"({claim.m},{claim.n})-obstruction verified: {cert.describe(inv.group)}"

    def _eval_sharpness(self, claim: Claim, inv: GroupInvariants):
        bound = inv.N(3)
        if bound is None:
            return CheckStatus.UNKNOWN, "N(3) undecided"
        d = inv.derived.derived_length
        n3 = bound + 1
        return (
            (CheckStatus.PASS, f"2^d = {2 ** d} = 2 * n3 = {2 * n3}")
            if 2 ** d == 2 * n3
            else (CheckStatus.FAIL, f"2^d = {2 ** d}, 2 * n3 = {2 * n3}")
        )

    def _select(self, inv: GroupInvariants, selector: str) -> ElementSet:
        """Resolve "derived", "center", "normal:<order>" or "generated:<label>;<label>...".

        Raises:
            SpecError: Unknown selector or no tested normal subgroup of that order
        """
        kind, _, arg = selector.partition(":")
        if kind == "derived":
            return inv.derived.terms[1]
        if kind == "center":
            return inv.center
        if kind == "normal":
            for normal in inv.normal_subgroups:
                if len(normal) == int(arg):
                    return normal
            raise SpecError(f"No tested normal subgroup of order {arg} in {inv.origin}")
        if kind == "generated":
            return inv.group.subgroup_generated([inv.group.index_of(label) for label in arg.split(";")])
        raise SpecError(f"Unknown subgroup selector {selector!r}")

    def _eval_subgroup(self, claim: Claim, inv: GroupInvariants):
        sub = self._select(inv, claim.expected[0])
        return compare_spectra(inv.subgroup_invariants(sub), inv, f"H{len(sub)}")

    def _eval_quotient(self, claim: Claim, inv: GroupInvariants):
        normal = self._select(inv, claim.expected[0])
        return compare_spectra(inv.quotient_invariants(normal), inv, f"G/N{len(normal)}")

    def _eval_spectrum(self, claim: Claim, inv: GroupInvariants):
        if not inv.spectrum_complete:
            return CheckStatus.UNKNOWN, "some spectrum row undecided"
        rows = ", ".join(f"N({r.m})={r.N}" for r in inv.spectrum)
        tight = []
        for m, n in claim.expected:
            if inv.N(m) >= n:
                return CheckStatus.FAIL, f"not T({m},{n}); {rows}"
            tight.append(f"T({m},{n}) {'tight' if inv.N(m - 1) >= n else 'not tight'}")
        return CheckStatus.PASS, f"{rows}; " + ", ".join(tight)


def verify_paper_corpus(
    budget: Optional[SearchBudget] = None,
    order_cap: int = 2000,
    include_s5: bool = False,
    only: Optional[str] = None,
) -> CorpusReport:
    """Evaluate the claims table and the structural checks over the corpus.

    Groups are processed sequentially; claims come out sorted by id, checks in
    corpus order.

    Args:
        budget: Limits for each individual search
        order_cap: Largest group order to build
        include_s5: Add S5 (clique only)
        only: Restrict to one claim id or one check id

    Returns:
        CorpusReport with claims, checks and the spectra computed on the way
    """
    evaluator = ClaimEvaluator(budget, order_cap, include_s5)
    report = CorpusReport()

    for claim in claims_table(include_s5):
        if only and claim.claim_id != only:
            continue
        report.claims.append(evaluator.evaluate(claim))

    claim_ids = {c.claim_id for c in claims_table(include_s5)}
    if not only or only not in claim_ids:
        for entry in corpus_entries(include_s5):
            if not entry.run_checks:
                continue
            inv = evaluator.invariants(entry.name)
            report.checks.extend(run_paper_checks(inv, only=[only] if only else None))

    report.spectra = evaluator.computed_spectra()

    logger.info(
        f"Corpus report: {len(report.claims)} claims, {len(report.checks)} checks, "
        f"{report.count(CheckStatus.FAIL)} failures"
    )
    return report
