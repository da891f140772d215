"""Moving strategies between the communication and nonlocal settings.

Forward: shared randomness simulates a c-bit protocol without any message.
A shared string r plays the message's role; when it happens to equal what
Alice would have sent (probability 1/2^c) the protocol runs faithfully,
otherwise the round is a fair coin. The value composes exactly as
p/2^c + (1 - 1/2^c)/2.

Backward: a deterministic nonlocal strategy becomes a log2(n)-bit protocol
with identical value: Alice just sends her would-be output.
"""
from fractions import Fraction

import numpy as np

from hidden_matching import (GameInstance, GameVariant, MajorityBlockProtocol,
                             comm_from_nonlocal, exact_win_probability,
                             nonlocal_from_comm, random_comm_protocol,
                             random_deterministic_pair)

inst_c = GameInstance(4, GameVariant.HM_COMM)
inst_nl = GameInstance(4, GameVariant.HM_NONLOCAL)

# --- forward: the composition identity, exactly -----------------------------

print("simulating communication protocols with shared randomness (n = 4):")
rng = np.random.default_rng(1)
protocols = [MajorityBlockProtocol(4, 1), MajorityBlockProtocol(4, 2),
             random_comm_protocol(4, 2, rng)]
for proto in protocols:
    p_comm = exact_win_probability(inst_c, proto).winning_probability
    strat = nonlocal_from_comm(proto)
    p_sim = exact_win_probability(inst_nl, strat).winning_probability
    c = proto.c
    predicted = Fraction(1, 2 ** c) * p_comm + (1 - Fraction(1, 2 ** c)) * Fraction(1, 2)
    print(f"  {proto.name:14s} (c={c}): protocol wins {p_comm}, "
          f"simulation wins {p_sim} == p/2^c + (1-1/2^c)/2 = {predicted}")
    assert p_sim == predicted

# --- the two branches, inspected --------------------------------------------

proto = MajorityBlockProtocol(4, 1)
strat = nonlocal_from_comm(proto)
x = 0b0011
msg = proto.message_rule(x)
print(f"\nwith x = {x:04b} the protocol would send m = {msg}:")
print(f"  shared r = m     -> Alice output distribution {dict(strat.alice_rule(x, msg).items)}")
print(f"  shared r = {1 - msg} != m -> uniform over all 4 strings "
      f"(round becomes a fair coin)")

# --- backward: value-preserving reduction ------------------------------------

print("\nreducing deterministic nonlocal strategies to protocols (n = 4):")
rng = np.random.default_rng(2)
for _ in range(3):
    pair = random_deterministic_pair(4, rng)
    v_nl = exact_win_probability(inst_nl, pair).winning_probability
    reduced = comm_from_nonlocal(pair)
    v_c = exact_win_probability(inst_c, reduced).winning_probability
    print(f"  nonlocal value {v_nl} -> {reduced.c}-bit protocol value {v_c}")
    assert v_nl == v_c
