"""Node: Biclique Extraction (Strong Erdős–Hajnal certificates)"""

from fractions import Fraction

from core.config import SEH_DENOMINATOR
from core.decomposition import region_split_finder
from core.errors import PreconditionViolation, TrigraphError, VerificationFailure
from core.oracles import BICLIQUE_ORACLES
from core.seh import extract_biclique_unweighted, run_extraction
from core.seh_kjoin import kjoin_corollary_biclique
from core.state import PipelineState
from core.weights import verify_biclique
from utils.formats import dump_biclique
from .common import note, option, record_error


def parse_ratio(text: str) -> Fraction:
    """'p/q' -> Fraction(p, q)"""
    try:
        p, q = text.split("/")
        return Fraction(int(p), int(q))
    except (ValueError, ZeroDivisionError):
        raise PreconditionViolation(f"ratio must look like p/q, got {text!r}")


def _check_certificate(state: PipelineState, T, b, real=None) -> None:
    problem = verify_biclique(T, b, real)
    if problem:
        raise VerificationFailure(f"biclique certificate fails: {problem}")
    state["verified"] = True


def extract_biclique_node(state: PipelineState) -> PipelineState:
    """
    Biclique or complement biclique of size at least n/55, or of weight at
    least w(T)/55 with --weights
    """
    T = state["trigraph"]
    regions = state.get("regions") or []
    finder = region_split_finder(regions) if option(state, "hinted", True) and regions else None
    verify_steps = option(state, "verify_steps", True)
    try:
        if option(state, "use_weights", False):
            w = state.get("weights")
            if w is None:
                raise PreconditionViolation("--weights given but the input file has no weight lines")
            extraction = run_extraction(T, w, split_finder=finder, check_preconditions=False,
                                        verify_steps=verify_steps)
            b = extraction.biclique
            _check_certificate(state, T, b, w.real)
            if SEH_DENOMINATOR * b.weight < w.total:
                raise VerificationFailure(f"weight {b.weight} is below w(T)/{SEH_DENOMINATOR} = {w.total}/{SEH_DENOMINATOR}")
        else:
            extraction = extract_biclique_unweighted(T, split_finder=finder, check_preconditions=False,
                                                     verify_steps=verify_steps)
            b = extraction.biclique
            _check_certificate(state, T, b)
            if SEH_DENOMINATOR * b.weight < T.n:
                raise VerificationFailure(f"smaller side {b.weight} is below n/{SEH_DENOMINATOR} for n={T.n}")
    except TrigraphError as e:
        return record_error(state, "biclique", e)

    state["extraction"] = extraction
    state["output"] = dump_biclique(b) + "\n"
    return note(state, f"✅ Found {b.kind.value} biclique of weight {b.weight} by {extraction.exit} "
                       f"after {extraction.contractions} contractions")


def kjoin_biclique_node(state: PipelineState) -> PipelineState:
    """
    Biclique of size at least c*n in a k-join closure instance (2ck < 1)
    """
    tree = state["kjoin_tree"]
    T = tree.trigraph
    name = option(state, "oracle", "exhaustive")
    try:
        c = parse_ratio(option(state, "c", "1/20"))
        if name not in BICLIQUE_ORACLES:
            raise PreconditionViolation(f"unknown biclique oracle {name!r}; "
                                        f"choose from {', '.join(sorted(BICLIQUE_ORACLES))}")
        extraction = kjoin_corollary_biclique(tree, c, option(state, "k", 2), BICLIQUE_ORACLES[name],
                                              verify_steps=option(state, "verify_steps", True))
        b = extraction.biclique
        _check_certificate(state, T, b)
        if c.denominator * b.weight < c.numerator * T.n:
            raise VerificationFailure(f"smaller side {b.weight} is below {c}*n for n={T.n}")
    except TrigraphError as e:
        return record_error(state, "k-join biclique", e)

    state["extraction"] = extraction
    state["output"] = dump_biclique(b) + "\n"
    return note(state, f"✅ Found {b.kind.value} biclique of size {b.weight} (c={c}) by {extraction.exit}")
