import numpy as np
import pytest

from swarmgame import (
    AgentState,
    DynamicsConfig,
    EngineConfig,
    EventKind,
    HeatField,
    Team,
    Vec2,
    compute_capture_field,
    deposit_heat,
    engine_tick,
    new_game,
    resolve_captures,
    state_hash,
)
from swarmgame.core import ZERO
from swarmgame.engine import PERIMETER_OFFSETS, cell_of

from oracles import capture_field_reference, perimeter_cells

CFG = EngineConfig()
DYN = DynamicsConfig()
G = CFG.grid_size


def agent(id, team, x, y, vx=0.0, vy=0.0):
    return AgentState(id=id, team=team, position=Vec2(x, y), velocity=Vec2(vx, vy), altitude=0.1 + 0.03 * id)


def hold_all(state):
    return {a.id: ZERO for a in state.agents}


# --- cells and heat -----------------------------------------------------------


def test_cell_mapping_covers_the_arena():
    assert cell_of(Vec2(0.0, 0.0), G) == (0, 0)
    assert cell_of(Vec2(0.51, 0.51), G) == (25, 25)
    assert cell_of(Vec2(1.0, 1.0), G) == (49, 49)  # the top edge belongs to the last cell
    assert cell_of(Vec2(0.02, 0.0399), G) == (1, 1)


def test_heat_decays_geometrically_when_team_is_absent():
    heat = HeatField.zero(G)
    heat = HeatField(red=heat.red, blue=heat.blue)
    start = np.zeros((G, G))
    start[10, 10] = 8.0
    heat = HeatField(red=start, blue=np.zeros((G, G)))
    for _ in range(50):
        heat = deposit_heat(heat, (), CFG)
    assert heat.red[10, 10] == pytest.approx(8.0 * CFG.heat_decay**50, rel=1e-12)
    assert heat.blue.sum() == 0.0


def test_stationary_agent_accumulates_geometric_series():
    heat = HeatField.zero(G)
    a = agent(0, Team.RED, 0.51, 0.51)
    for _ in range(100):
        heat = deposit_heat(heat, (a,), CFG)
    expect = (1.0 - CFG.heat_decay**100) / (1.0 - CFG.heat_decay)
    assert heat.red[25, 25] == pytest.approx(expect, abs=1e-9)
    # everything else stays empty
    rest = heat.red.copy()
    rest[25, 25] = 0.0
    assert rest.sum() == 0.0


def test_deposits_follow_the_agent_team():
    heat = HeatField.zero(G)
    a = agent(0, Team.RED, 0.31, 0.31)
    heat = deposit_heat(heat, (a,), CFG)
    flipped = AgentState(id=0, team=Team.BLUE, position=a.position, velocity=a.velocity, altitude=a.altitude)
    heat = deposit_heat(heat, (flipped,), CFG)
    i, j = cell_of(a.position, G)
    # the old deposit stays red and decays; the new one is blue
    assert heat.red[i, j] == pytest.approx(CFG.heat_decay)
    assert heat.blue[i, j] == 1.0


# --- capture field -------------------------------------------------------------


def test_perimeter_offsets_are_the_distance_two_ring():
    assert len(PERIMETER_OFFSETS) == 16
    assert all(max(abs(di), abs(dj)) == 2 for di, dj in PERIMETER_OFFSETS)
    assert len(set(PERIMETER_OFFSETS)) == 16


def test_heat_spike_spreads_to_exactly_the_ring():
    layer = np.zeros((G, G))
    layer[25, 25] = 12.8
    field = compute_capture_field(HeatField(red=layer, blue=np.zeros((G, G))), CFG)
    expect = np.zeros((G, G))
    for i, j in perimeter_cells(25, 25, G):
        expect[i, j] = 12.8 / 16.0
    np.testing.assert_array_equal(field.red, expect)


def test_boundary_cells_average_over_fewer_neighbors():
    # enumerating the in-bounds ring by hand: the corner keeps 5 of 16 cells,
    # an edge cell midway along a wall keeps 9
    assert len(perimeter_cells(0, 0, G)) == 5
    assert len(perimeter_cells(0, 25, G)) == 9
    assert len(perimeter_cells(25, 25, G)) == 16
    layer = np.zeros((G, G))
    layer[2, 0] = 5.0  # inside the corner's in-bounds ring
    field = compute_capture_field(HeatField(red=layer, blue=np.zeros((G, G))), CFG)
    assert field.red[0, 0] == pytest.approx(5.0 / 5.0)


@pytest.mark.parametrize("seed", range(5))
def test_capture_field_matches_bruteforce(seed):
    rng = np.random.default_rng(seed)
    layer = rng.uniform(0.0, 30.0, size=(G, G))
    field = compute_capture_field(HeatField(red=layer, blue=layer * 0.5), CFG)
    np.testing.assert_array_equal(field.red, capture_field_reference(layer))
    np.testing.assert_array_equal(field.blue, capture_field_reference(layer * 0.5))


def test_mask_empty_below_activity_floor():
    layer = np.zeros((G, G))
    layer[25, 25] = 0.9 * CFG.activity_floor * 16  # ring value just under the floor
    field = compute_capture_field(HeatField(red=layer, blue=np.zeros((G, G))), CFG)
    assert not field.mask(Team.RED).any()
    assert not field.mask(Team.BLUE).any()


def test_mask_scale_invariant_once_active():
    rng = np.random.default_rng(3)
    layer = rng.uniform(0.0, 40.0, size=(G, G))
    a = compute_capture_field(HeatField(red=layer, blue=np.zeros((G, G))), CFG)
    b = compute_capture_field(HeatField(red=layer * 7.0, blue=np.zeros((G, G))), CFG)
    np.testing.assert_array_equal(a.mask(Team.RED), b.mask(Team.RED))


def test_mask_uses_strict_threshold():
    layer = np.zeros((G, G))
    layer[25, 25] = 160.0
    field = compute_capture_field(HeatField(red=layer, blue=np.zeros((G, G))), CFG)
    mask = field.mask(Team.RED)
    # ring cells all equal the max, so all 16 are in; nothing else is
    assert mask.sum() == 16
    for i, j in perimeter_cells(25, 25, G):
        assert mask[i, j]


# --- capture resolution ----------------------------------------------------------


def ring_trap_state(extra_blue=None):
    """Red parked long enough for its ring to arm; blue standing on the ring."""
    red = agent(0, Team.RED, 0.51, 0.51)
    blue = agent(1, Team.BLUE, 0.55, 0.51)  # cell (27, 25): Chebyshev distance 2
    agents = [red, blue] + (extra_blue or [])
    state = new_game(agents, CFG)
    heat = state.heat
    for _ in range(40):
        heat = deposit_heat(heat, (red,), CFG)
    capture = compute_capture_field(heat, CFG)
    return state.__class__(
        tick=state.tick, agents=state.agents, heat=heat, capture=capture, events=(), winner=None
    )


def test_no_mask_means_no_changes():
    state = new_game([agent(0, Team.RED, 0.2, 0.2), agent(1, Team.BLUE, 0.8, 0.8)], CFG)
    out = resolve_captures(state, CFG)
    assert out.agents == state.agents
    assert out.events == ()


def test_agent_on_armed_ring_is_captured():
    state = ring_trap_state()
    out = resolve_captures(state, CFG)
    captured = [a for a in out.agents if a.id == 1][0]
    assert captured.team is Team.RED
    kinds = [e.kind for e in out.events]
    assert kinds == [EventKind.CAPTURE, EventKind.GAME_OVER]
    assert out.winner is Team.RED


def test_capture_preserves_position_and_velocity():
    state = ring_trap_state()
    before = [a for a in state.agents if a.id == 1][0]
    out = resolve_captures(state, CFG)
    after = [a for a in out.agents if a.id == 1][0]
    assert after.position == before.position
    assert after.velocity == before.velocity
    assert after.altitude == before.altitude


def test_game_continues_while_both_teams_have_agents():
    state = ring_trap_state(extra_blue=[agent(2, Team.BLUE, 0.9, 0.9)])
    out = resolve_captures(state, CFG)
    assert out.winner is None
    assert [e.kind for e in out.events] == [EventKind.CAPTURE]
    sizes = out.team_sizes()
    assert sizes[Team.RED] == 2 and sizes[Team.BLUE] == 1


def test_mutual_captures_both_fire():
    # two parked agents at Chebyshev distance 2 arm each other's rings
    red = agent(0, Team.RED, 0.51, 0.51)
    blue = agent(1, Team.BLUE, 0.55, 0.51)
    state = new_game([red, blue], CFG)
    heat = state.heat
    for _ in range(40):
        heat = deposit_heat(heat, (red, blue), CFG)
    capture = compute_capture_field(heat, CFG)
    armed = state.__class__(
        tick=0, agents=state.agents, heat=heat, capture=capture, events=(), winner=None
    )
    out = resolve_captures(armed, CFG)
    teams = {a.id: a.team for a in out.agents}
    assert teams == {0: Team.BLUE, 1: Team.RED}
    assert len(out.events) == 2
    assert all(e.kind is EventKind.CAPTURE for e in out.events)
    assert out.winner is None  # 1v1 swap conserves both teams
    sizes = out.team_sizes()
    assert sizes[Team.RED] == 1 and sizes[Team.BLUE] == 1


def test_resolution_is_order_independent():
    state = ring_trap_state(extra_blue=[agent(2, Team.BLUE, 0.47, 0.51)])  # also on the ring
    out = resolve_captures(state, CFG)
    reversed_state = state.__class__(
        tick=state.tick,
        agents=tuple(reversed(state.agents)),
        heat=state.heat,
        capture=state.capture,
        events=(),
        winner=None,
    )
    out_rev = resolve_captures(reversed_state, CFG)
    assert {a.id: a.team for a in out.agents} == {a.id: a.team for a in out_rev.agents}


# --- engine tick ------------------------------------------------------------------


def test_resting_agents_stay_put_and_heat_grows():
    state = new_game([agent(0, Team.RED, 0.3, 0.3), agent(1, Team.BLUE, 0.7, 0.7)], CFG)
    out = state
    for _ in range(10):
        out = engine_tick(out, hold_all(out), CFG, DYN)
    assert out.tick == 10
    assert out.agents[0].position == Vec2(0.3, 0.3)
    i, j = cell_of(Vec2(0.3, 0.3), G)
    assert out.heat.red[i, j] == pytest.approx((1 - CFG.heat_decay**10) / (1 - CFG.heat_decay))


def test_tick_requires_exactly_one_control_per_agent():
    state = new_game([agent(0, Team.RED, 0.3, 0.3), agent(1, Team.BLUE, 0.7, 0.7)], CFG)
    with pytest.raises(ValueError, match="one control per agent"):
        engine_tick(state, {0: ZERO}, CFG, DYN)
    with pytest.raises(ValueError):
        engine_tick(state, {0: ZERO, 1: ZERO, 5: ZERO}, CFG, DYN)


def test_walker_trap_golden_run():
    """A blue walker strolls onto a parked red agent's armed ring.

    The whole trajectory is deterministic, so the final digest pins down the
    integrator, heat bookkeeping, field math, and event ordering all at once.
    """
    red = AgentState(id=0, team=Team.RED, position=Vec2(0.51, 0.51), velocity=ZERO, altitude=0.25)
    blue = AgentState(id=1, team=Team.BLUE, position=Vec2(0.51, 0.75), velocity=Vec2(0.0, -0.2), altitude=0.75)
    state = new_game([red, blue], CFG)
    controls = {0: ZERO, 1: ZERO}
    for _ in range(40):
        state = engine_tick(state, controls, CFG, DYN)
        if state.winner is not None:
            break
    assert state.tick == 29
    assert state.winner is Team.RED
    assert [e.kind for e in state.events] == [EventKind.CAPTURE, EventKind.GAME_OVER]
    assert state.events[0].agent_id == 1
    assert state.events[0].tick == 29
    assert state_hash(state) == "7119d014c5734e4d7aec04411a10b68955365c28cc8dff2bad0eb68a9c7074cb"


def test_post_game_over_ticks_are_no_ops():
    red = agent(0, Team.RED, 0.51, 0.51)
    blue = AgentState(id=1, team=Team.BLUE, position=Vec2(0.51, 0.75), velocity=Vec2(0.0, -0.2), altitude=0.75)
    state = new_game([red, blue], CFG)
    controls = {0: ZERO, 1: ZERO}
    for _ in range(40):
        state = engine_tick(state, controls, CFG, DYN)
    assert state.winner is Team.RED
    frozen = state_hash(state)
    again = engine_tick(state, controls, CFG, DYN)
    assert state_hash(again) == frozen
    assert again.tick == state.tick


def test_conservation_every_tick():
    agents = [agent(i, Team.RED, 0.1 + 0.05 * i, 0.1) for i in range(4)]
    agents += [agent(4 + i, Team.BLUE, 0.1 + 0.05 * i, 0.9) for i in range(4)]
    state = new_game(agents, CFG)
    for _ in range(60):
        state = engine_tick(state, hold_all(state), CFG, DYN)
        sizes = state.team_sizes()
        assert sizes[Team.RED] + sizes[Team.BLUE] == 8


def test_state_hash_distinguishes_states():
    s1 = new_game([agent(0, Team.RED, 0.3, 0.3), agent(1, Team.BLUE, 0.7, 0.7)], CFG)
    s2 = new_game([agent(0, Team.RED, 0.3, 0.3), agent(1, Team.BLUE, 0.7, 0.71)], CFG)
    assert state_hash(s1) != state_hash(s2)
    assert state_hash(s1) == state_hash(s1)
