"""
Plan Graph - Graphviz view of how a witness matrix was assembled.
Each construction step becomes a node; edges point from a matrix to the
matrix it was derived from.
"""

import graphviz

from Distinguish.construct import ConstructionPlan

CASE_COLORS = {
    "small_table": "lightyellow",
    "column_pad": "lightblue",
    "half_width_pad": "lightblue",
    "staircase_pad": "lightblue",
    "complement": "lightcoral",
    "row_direction": "palegreen",
    "transpose_trick": "palegreen",
}


def create_plan_graph(plan: ConstructionPlan) -> str:
    """
    Create a Graphviz DOT graph of a construction plan.

    Args:
        plan: Plan returned alongside a witness

    Returns:
        Graphviz DOT source code as string
    """
    m, n = plan.dims
    graph = graphviz.Digraph(comment=f'Construction of a {m}x{n} asymmetric matrix')

    graph.attr(
        rankdir='TB',
        bgcolor='transparent',
        fontname='Arial',
        nodesep='0.5',
        ranksep='0.8'
    )
    graph.attr('node',
        shape='box',
        style='filled',
        fontname='Arial',
        fontsize='10'
    )
    graph.attr('edge',
        fontname='Arial',
        fontsize='9'
    )

    step = plan
    index = 0
    while step is not None:
        _add_step_node(graph, f'step{index}', step)
        if step.source is not None:
            graph.edge(f'step{index}', f'step{index + 1}', label=f'{step.base[0]}x{step.base[1]}')
        step = step.source
        index += 1

    return graph.source


def _add_step_node(graph: graphviz.Digraph, node_id: str, step: ConstructionPlan):
    m, n = step.dims
    lines = [f'{step.case}', f'{m}x{n}']
    lines.extend(step.checks)
    if step.verified:
        lines.append('checked asymmetric')
    label = '\\n'.join(line.replace('"', "'") for line in lines)
    graph.node(node_id, label, fillcolor=CASE_COLORS.get(step.case, 'lightgray'))
