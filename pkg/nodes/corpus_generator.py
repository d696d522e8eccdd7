"""Node: Corpus Generation and k-Join Composition"""

from core.errors import TrigraphError
from core.state import PipelineState
from utils.formats import dump_composition, dump_trigraph
from utils.generator import generate
from utils.reporting import ground_truth_json
from .common import note, option, record_error


def _commented(text: str) -> str:
    return "".join(f"# {line}\n" for line in text.splitlines())


def generate_node(state: PipelineState) -> PipelineState:
    """
    Build the recipe's trigraph from the seed; the output file carries the
    recorded 2-join sides as region lines and the ground truth as comments
    """
    try:
        instance = generate(state["recipe"], state.get("seed", 0), k=option(state, "k", 2))
    except TrigraphError as e:
        return record_error(state, "generate", e)

    T = instance.trigraph
    state["generated"] = instance
    state["trigraph"] = T
    state["regions"] = list(instance.truth.regions)
    state["kjoin_tree"] = instance.kjoin_tree
    header = f"generator {instance.version} recipe {instance.recipe} seed {instance.seed}\n"
    state["output"] = (_commented(header) + dump_trigraph(T, regions=instance.truth.regions)
                       + _commented("truth " + ground_truth_json(instance, indent=None)))
    return note(state, f"✅ Generated n={T.n} from {instance.recipe} with seed {instance.seed}")


def compose_kjoin_node(state: PipelineState) -> PipelineState:
    """
    Build a k-join closure instance and its composition tree from a recipe
    """
    k = option(state, "k", 2)
    try:
        instance = generate(state["recipe"], state.get("seed", 0), k=k, closure=True, run_checks=False)
    except TrigraphError as e:
        return record_error(state, "compose", e)

    tree = instance.kjoin_tree
    state["generated"] = instance
    state["kjoin_tree"] = tree
    state["trigraph"] = tree.trigraph
    if state["command"] == "kjoin-compose":
        state["output"] = dump_trigraph(tree.trigraph) + _commented(dump_composition(tree))
    return note(state, f"✅ Composed k={k} closure instance n={tree.trigraph.n} from {instance.recipe}")
