from Distinguish.construct import asymmetric_witness
from plan_graph import create_plan_graph


def test_complement_chain():
    _, plan = asymmetric_witness(5, 12)
    source = create_plan_graph(plan)
    assert source.startswith("// Construction of a 5x12 asymmetric matrix")
    assert "digraph" in source
    assert "step0 -> step1" in source
    assert "step2" not in source
    assert "complement" in source and "small_table" in source
    assert "lightcoral" in source


def test_single_step():
    _, plan = asymmetric_witness(5, 4)
    source = create_plan_graph(plan)
    assert "step0" in source
    assert "->" not in source
    assert "checked asymmetric" in source
