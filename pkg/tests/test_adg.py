import pytest

from conftest import CORPUS_FILES, corpus_text
from slicetool.adg import (CALL, CONTROL, DATA, KIND_ACTUAL_IN,
                           KIND_ACTUAL_OUT, KIND_ENTRY, KIND_STMT, build_adg,
                           build_call_graph, dump_adg)
from slicetool.parser import parse_program, parse_sig


def _adg(name: str, include_control=True):
    program = parse_program(corpus_text(name))
    return program, build_adg(program, include_control=include_control)


def test_single_method_no_calls_nodes_are_entry_plus_stmts():
    program = parse_program("""class A { method <A: void m()> {
        int x; int y;
        x = 1; y = x; return;
    } }""")
    adg = build_adg(program, include_control=True)
    kinds = sorted(n.kind for n in adg.nodes)
    assert kinds == [KIND_ENTRY, KIND_STMT, KIND_STMT, KIND_STMT]
    thin = build_adg(program, include_control=False)
    assert [e for e in thin.edges if e.kind == CONTROL] == []
    assert {(e.src, e.dst) for e in thin.edges} == {(1, 2)}


def test_internal_call_with_one_arg_and_used_return():
    program = parse_program("""class A {
        method <A: void main()> {
            int x; int y;
            x = 1;
            y = staticinvoke <A: int f(int)>(x);
            return;
        }
        method <A: int f(int)> {
            int p;
            p := @parameter0;
            return p;
        }
    }""")
    adg = build_adg(program)
    by_kind = {}
    for node in adg.nodes:
        by_kind.setdefault(node.kind, []).append(node)
    assert len(by_kind[KIND_ACTUAL_IN]) == 1
    assert len(by_kind[KIND_ACTUAL_OUT]) == 1
    assert len([e for e in adg.edges if e.kind == CALL]) == 1


def test_external_call_sites_get_no_expansion():
    program = parse_program("""class A { method <A: void m()> {
        java.lang.String s;
        s = staticinvoke <other.Lib: java.lang.String get()>();
        return;
    } }""")
    adg = build_adg(program)
    assert all(n.kind not in (KIND_ACTUAL_IN, KIND_ACTUAL_OUT) for n in adg.nodes)
    assert all(e.kind != CALL for e in adg.edges)


def test_call_graph_resolution_on_interproc(ground_truth):
    program = parse_program(corpus_text("interproc.slir"))
    resolution = build_call_graph(program)
    expected = ground_truth["interproc.slir"]["call_resolution"]
    for method_text, sites in expected.items():
        sig = parse_sig(method_text)
        for ordinal_text, target in sites.items():
            resolved = resolution[(sig, int(ordinal_text))]
            if target == "external":
                assert resolved is None
            else:
                assert resolved is not None and resolved.render() == target


def test_interproc_counts_match_ground_truth(ground_truth):
    _, adg_full = _adg("interproc.slir", include_control=True)
    _, adg_thin = _adg("interproc.slir", include_control=False)
    facts = ground_truth["interproc.slir"]
    assert len(adg_full.nodes) == facts["adg_nodes"]
    assert len(adg_thin.nodes) == facts["adg_nodes"]
    assert len(adg_full.edges) == facts["adg_edges_full"]
    assert len(adg_thin.edges) == facts["adg_edges_thin"]


@pytest.mark.parametrize("name", CORPUS_FILES)
def test_thin_build_is_full_minus_control(name):
    _, full = _adg(name, include_control=True)
    _, thin = _adg(name, include_control=False)
    assert [(n.id, n.kind) for n in full.nodes] == [(n.id, n.kind) for n in thin.nodes]
    full_edges = {(e.src, e.dst, e.kind) for e in full.edges}
    thin_edges = {(e.src, e.dst, e.kind) for e in thin.edges}
    assert thin_edges == {e for e in full_edges if e[2] != CONTROL}


@pytest.mark.parametrize("name", CORPUS_FILES)
def test_data_edges_share_a_storage_name(name):
    _, adg = _adg(name)
    for edge in adg.edges:
        if edge.kind != DATA:
            continue
        src, dst = adg.by_id[edge.src], adg.by_id[edge.dst]
        assert src.names & dst.names, (src.display_text, dst.display_text)


@pytest.mark.parametrize("name", CORPUS_FILES)
def test_no_self_loop_data_edges(name):
    _, adg = _adg(name)
    assert all(e.src != e.dst for e in adg.edges if e.kind == DATA)


@pytest.mark.parametrize("name", CORPUS_FILES)
def test_node_ids_deterministic_across_builds(name):
    program = parse_program(corpus_text(name))
    first = dump_adg(build_adg(program, include_control=True))
    second = dump_adg(build_adg(parse_program(corpus_text(name)),
                                include_control=True))
    assert first == second


@pytest.mark.parametrize("name", CORPUS_FILES)
def test_actual_nodes_bridge_caller_and_callee(name):
    _, adg = _adg(name)
    degree = {n.id: 0 for n in adg.nodes}
    for e in adg.edges:
        degree[e.src] += 1
        degree[e.dst] += 1
    for node in adg.nodes:
        if node.kind in (KIND_ACTUAL_IN, KIND_ACTUAL_OUT):
            assert degree[node.id] >= 2, node.display_text


def test_entry_node_unique_per_method():
    for name in CORPUS_FILES:
        program, adg = _adg(name)
        entries = [n for n in adg.nodes if n.kind == KIND_ENTRY]
        assert len(entries) == len(program.methods())
        assert len({n.method for n in entries}) == len(entries)


def test_unreachable_statements_excluded(ground_truth):
    program, adg = _adg("unreachable.slir")
    facts = ground_truth["unreachable.slir"]
    assert len(adg.nodes) == facts["adg_nodes"]
    method = program.methods()[0]
    assert adg.diagnostics == [(method.sig, 2)]
    assert all(n.stmt_ordinal != 2 for n in adg.nodes)


def test_adjacency_reindexes_edge_list():
    _, adg = _adg("interproc.slir")
    rebuilt = {(src, dst, kind)
               for src, outs in adg.adjacency.items() for dst, kind in outs}
    assert rebuilt == {(e.src, e.dst, e.kind) for e in adg.edges}


def test_dump_format_shape():
    _, adg = _adg("straightline.slir")
    lines = dump_adg(adg).splitlines()
    assert lines[0].startswith("N0 [Entry] <demo.Straight: void main()>")
    assert any(line.startswith("E ") and "[Data]" in line for line in lines)
