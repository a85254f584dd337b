import json

import pytest
from hypothesis import given

import strategies
from antshop import (
    AcoParams,
    DecodeError,
    Instance,
    Op,
    Schedule,
    decode,
    render_gantt,
    run_colony,
    schedule_from_json,
    schedule_to_json,
    validate,
)


def ids(inst, *pairs):
    return [inst.op_id(j, s) for j, s in pairs]


def test_decode_in_order_sequence(toy):
    # Jobs one after another: job 1 waits for machine 1, then machine 0.
    schedule = decode(toy, ids(toy, (0, 0), (0, 1), (1, 0), (1, 1)))
    assert schedule.start == (0, 3, 5, 7)
    assert schedule.makespan == 11


def test_decode_optimal_sequence(toy):
    schedule = decode(toy, ids(toy, (0, 0), (1, 0), (1, 1), (0, 1)))
    assert schedule.makespan == 7
    assert schedule.start == (0, 3, 0, 3)


def test_decode_all_toy_interleavings(toy):
    # Frozen against the exhaustive oracle: 6 interleavings, optimum 7.
    expected = {
        ((0, 0), (0, 1), (1, 0), (1, 1)): 11,
        ((0, 0), (1, 0), (0, 1), (1, 1)): 7,
        ((0, 0), (1, 0), (1, 1), (0, 1)): 7,
        ((1, 0), (0, 0), (0, 1), (1, 1)): 7,
        ((1, 0), (0, 0), (1, 1), (0, 1)): 7,
        ((1, 0), (1, 1), (0, 0), (0, 1)): 11,
    }
    for pairs, makespan in expected.items():
        assert decode(toy, ids(toy, *pairs)).makespan == makespan


def test_decode_single_job_chain():
    inst = Instance("chain", 1, 3, ((Op(0, 2), Op(1, 5), Op(2, 1)),))
    schedule = decode(inst, list(inst.op_ids()))
    assert schedule.makespan == 8
    assert schedule.start == (0, 2, 7)


def test_decode_errors_carry_position(toy):
    with pytest.raises(DecodeError) as err:
        decode(toy, ids(toy, (0, 0), (0, 0)))
    assert err.value.position == 1
    with pytest.raises(DecodeError) as err:
        decode(toy, ids(toy, (0, 1)))
    assert err.value.position == 0
    with pytest.raises(DecodeError) as err:
        decode(toy, ids(toy, (0, 0), (0, 1), (1, 0)))
    assert err.value.position == 3
    assert "covers 3 of 4" in str(err.value)


def test_validate_accepts_decoder_output(toy):
    schedule = decode(toy, ids(toy, (0, 0), (1, 0), (1, 1), (0, 1)))
    assert validate(schedule) is None


def test_validate_flags_machine_overlap(toy):
    # Job order holds but (1,1) runs [2,6) on machine 0 against (0,0) [0,3).
    bad = Schedule(toy, (0, 3, 0, 2), 6)
    violation = validate(bad)
    assert violation is not None
    assert violation.kind == "machine_overlap"
    assert {(o.job, o.step) for o in violation.ops} == {(0, 0), (1, 1)}


def test_validate_flags_precedence_off_by_one(toy):
    # (0,1) starts one tick before (0,0) finishes.
    bad = Schedule(toy, (0, 2, 5, 7), 11)
    violation = validate(bad)
    assert violation is not None
    assert violation.kind == "precedence"
    assert {(o.job, o.step) for o in violation.ops} == {(0, 0), (0, 1)}


def test_validate_flags_missing_start(toy):
    bad = Schedule(toy, (0, 3, None, 7), 11)
    violation = validate(bad)
    assert violation is not None
    assert violation.kind == "coverage"


def test_validate_flags_wrong_makespan(toy):
    good = decode(toy, ids(toy, (0, 0), (1, 0), (1, 1), (0, 1)))
    bad = Schedule(toy, good.start, good.makespan + 1)
    violation = validate(bad)
    assert violation is not None
    assert violation.kind == "makespan"


def test_validate_allows_zero_duration_sharing_an_instant():
    inst = Instance("z", 2, 1, ((Op(0, 0),), (Op(0, 3),)))
    schedule = decode(inst, list(inst.op_ids()))
    assert validate(schedule) is None


def test_render_gantt_optimal_toy(toy):
    schedule = decode(toy, ids(toy, (0, 0), (1, 0), (1, 1), (0, 1)))
    assert render_gantt(schedule) == "M0: J0.0[0,3) J1.1[3,7)\nM1: J1.0[0,2) J0.1[3,5)"


def test_render_gantt_empty_instance():
    empty = Instance("empty", 0, 0, ())
    assert render_gantt(decode(empty, [])) == ""


def test_render_gantt_ft06_best(ft06):
    params = AcoParams(
        iterations=1000,
        elitism=True,
        beta=2.0,
        evaporation=0.01,
        init_mode=2,
        inc_mode=1,
        seed=1,
    )
    result = run_colony(ft06, params)
    schedule = decode(ft06, result.best_path.sequence)
    text = render_gantt(schedule)
    lines = text.splitlines()
    assert len(lines) == 6
    ends = [
        int(cell.rsplit(",", 1)[1].rstrip(")"))
        for line in lines
        for cell in line.split()[1:]
    ]
    assert max(ends) == schedule.makespan == 55


def test_json_round_trip(toy):
    schedule = decode(toy, ids(toy, (0, 0), (1, 0), (1, 1), (0, 1)))
    text = schedule_to_json(schedule)
    loaded = schedule_from_json(toy, text)
    assert loaded == schedule
    payload = json.loads(text)
    assert payload["instance"] == "toy2x2"
    assert payload["makespan"] == 7
    assert len(payload["operations"]) == 4


def test_from_json_missing_op_becomes_coverage_violation(toy):
    schedule = decode(toy, ids(toy, (0, 0), (1, 0), (1, 1), (0, 1)))
    payload = json.loads(schedule_to_json(schedule))
    payload["operations"] = payload["operations"][:-1]
    loaded = schedule_from_json(toy, json.dumps(payload))
    violation = validate(loaded)
    assert violation is not None
    assert violation.kind == "coverage"


def test_from_json_rejects_structural_problems(toy):
    schedule = decode(toy, ids(toy, (0, 0), (1, 0), (1, 1), (0, 1)))
    good = json.loads(schedule_to_json(schedule))

    with pytest.raises(ValueError, match="malformed JSON"):
        schedule_from_json(toy, "{nope")
    wrong_instance = dict(good, instance="ft06")
    with pytest.raises(ValueError, match="instance"):
        schedule_from_json(toy, json.dumps(wrong_instance))
    bad_machine = json.loads(json.dumps(good))
    bad_machine["operations"][0]["machine"] = 1
    with pytest.raises(ValueError, match="machine"):
        schedule_from_json(toy, json.dumps(bad_machine))
    unknown_op = json.loads(json.dumps(good))
    unknown_op["operations"][0]["step"] = 9
    with pytest.raises(ValueError, match="step"):
        schedule_from_json(toy, json.dumps(unknown_op))
    duplicate = json.loads(json.dumps(good))
    duplicate["operations"].append(duplicate["operations"][0])
    with pytest.raises(ValueError, match="duplicate"):
        schedule_from_json(toy, json.dumps(duplicate))


@given(strategies.instance_and_sequence())
def test_adjacent_swap_locality(pair):
    # Swapping adjacent sequence entries of different jobs on different
    # machines leaves the decoded schedule untouched.
    inst, seq = pair
    base = decode(inst, seq)
    for i in range(len(seq) - 1):
        a, b = seq[i], seq[i + 1]
        if a.job == b.job:
            continue
        if inst.jobs[a.job][a.step].machine == inst.jobs[b.job][b.step].machine:
            continue
        swapped = list(seq)
        swapped[i], swapped[i + 1] = b, a
        other = decode(inst, swapped)
        assert other.makespan == base.makespan
        assert other.start == base.start
