"""Independent reference implementations used to cross-check the package.

Everything here is written directly from the model definitions with plain
loops over explicit interferer sets, favoring obviousness over speed, and
shares no code with ``skyrelay``.
"""

from __future__ import annotations

import math


def path_loss_db(wd_xyz, uav_xyz, ch) -> float:
    dx, dy, dz = (wd_xyz[i] - uav_xyz[i] for i in range(3))
    d = math.sqrt(dx**2 + dy**2 + dz**2)
    theta = math.degrees(math.asin(uav_xyz[2] / d))
    sig = (ch.eta_los - ch.eta_nlos) / (1.0 + ch.a * math.exp(-ch.b * (theta - ch.a)))
    return sig + 20.0 * math.log10(4.0 * math.pi * ch.carrier_hz * d / ch.light_speed_m_s) + ch.eta_nlos


def gain_air(wd_xyz, uav_xyz, ch) -> float:
    return 10.0 ** (-path_loss_db(wd_xyz, uav_xyz, ch) / 10.0)


def gain_ground(xy1, xy2, ch) -> float:
    d = math.sqrt((xy1[0] - xy2[0]) ** 2 + (xy1[1] - xy2[1]) ** 2)
    return ch.beta0 * d ** (-ch.alpha)


def _swd3(pair):
    return (pair.swd_xy[0], pair.swd_xy[1], 0.0)


def _dwd3(pair):
    return (pair.dwd_xy[0], pair.dwd_xy[1], 0.0)


def _groups(pl):
    """UAV index -> list of relayed-pair indices it serves."""
    groups = {n: [] for n in range(len(pl.uav_xyz))}
    for m, n in enumerate(pl.assignment):
        groups[int(n)].append(m)
    return groups


def _cochannel_uavs(pl, n):
    c = pl.uav_channel[n]
    return [n2 for n2 in range(len(pl.uav_xyz)) if n2 != n and pl.uav_channel[n2] == c]


def _cochannel_directs(pl, cfg, n):
    c = pl.uav_channel[n]
    return [k for k in range(cfg.k_pairs) if pl.direct_channel[k] == c]


def interference_up(m, n, pl, cfg) -> float:
    groups = _groups(pl)
    uav = pl.uav_xyz[n]
    total = 0.0
    for n2 in _cochannel_uavs(pl, n):
        members = groups[n2]
        for w in members:
            pair = cfg.relayed_pairs[w]
            total += pair.tx_power_w * gain_air(_swd3(pair), uav, cfg.channel) / len(members)
    for k in _cochannel_directs(pl, cfg, n):
        pair = cfg.direct_pairs[k]
        total += pair.activity * pair.tx_power_w * gain_air(_swd3(pair), uav, cfg.channel)
    return total


def sinr_up(m, n, pl, cfg) -> float:
    pair = cfg.relayed_pairs[m]
    signal = pair.tx_power_w * gain_air(_swd3(pair), pl.uav_xyz[n], cfg.channel)
    return signal / (cfg.channel.noise_w + interference_up(m, n, pl, cfg))


def sinr_down(n, m, pl, cfg) -> float:
    groups = _groups(pl)
    dwd = _dwd3(cfg.relayed_pairs[m])
    total = 0.0
    for n2 in _cochannel_uavs(pl, n):
        if groups[n2]:
            total += pl.uav_tx_w[n2] * gain_air(dwd, pl.uav_xyz[n2], cfg.channel)
    for k in _cochannel_directs(pl, cfg, n):
        pair = cfg.direct_pairs[k]
        total += pair.activity * pair.tx_power_w * gain_ground(pair.swd_xy, dwd[:2], cfg.channel)
    signal = pl.uav_tx_w[n] * gain_air(dwd, pl.uav_xyz[n], cfg.channel)
    return signal / (cfg.channel.noise_w + total)


def sinr_direct_leg(m, pl, cfg) -> float:
    n = int(pl.assignment[m])
    groups = _groups(pl)
    me = cfg.relayed_pairs[m]
    total = 0.0
    for n2 in _cochannel_uavs(pl, n):
        members = groups[n2]
        for w in members:
            pair = cfg.relayed_pairs[w]
            total += pair.tx_power_w * gain_ground(pair.swd_xy, me.dwd_xy, cfg.channel) / len(members)
    for k in _cochannel_directs(pl, cfg, n):
        pair = cfg.direct_pairs[k]
        total += pair.activity * pair.tx_power_w * gain_ground(pair.swd_xy, me.dwd_xy, cfg.channel)
    signal = me.tx_power_w * gain_ground(me.swd_xy, me.dwd_xy, cfg.channel)
    return signal / (cfg.channel.noise_w + total)


def rate(m, n, pl, cfg) -> float:
    if int(pl.assignment[m]) != n:
        return 0.0
    mu = len(_groups(pl)[n])
    g1 = sinr_up(m, n, pl, cfg)
    g2 = sinr_down(n, m, pl, cfg)
    g0 = sinr_direct_leg(m, pl, cfg)
    combined = 1.0 + g0 + g1 * g2 / (1.0 + g1 + g2)
    return cfg.channel.bandwidth_hz / (2.0 * mu) * math.log2(combined)


def capacity(pl, cfg) -> float:
    total = 0.0
    for m in range(cfg.m_pairs):
        for n in range(len(pl.uav_xyz)):
            total += rate(m, n, pl, cfg)
    return total


def direct_only_capacity(cfg, channels, direct_channels) -> float:
    total = 0.0
    for m, pair in enumerate(cfg.relayed_pairs):
        interference = 0.0
        for m2, other in enumerate(cfg.relayed_pairs):
            if m2 != m and channels[m2] == channels[m]:
                interference += other.tx_power_w * gain_ground(other.swd_xy, pair.dwd_xy, cfg.channel)
        for k, dpair in enumerate(cfg.direct_pairs):
            if direct_channels[k] == channels[m]:
                interference += dpair.activity * dpair.tx_power_w * gain_ground(
                    dpair.swd_xy, pair.dwd_xy, cfg.channel
                )
        signal = pair.tx_power_w * gain_ground(pair.swd_xy, pair.dwd_xy, cfg.channel)
        total += cfg.channel.bandwidth_hz * math.log2(1.0 + signal / (cfg.channel.noise_w + interference))
    return total


def propulsion_power(v, ep) -> float:
    blade = ep.p_blade_w * (1.0 + 3.0 * v**2 / ep.tip_speed_m_s**2)
    v0 = ep.rotor_induced_v_m_s
    induced = ep.p_induced_w * math.sqrt(
        math.sqrt(1.0 + v**4 / (4.0 * v0**4)) - v**2 / (2.0 * v0**2)
    )
    parasite = 0.5 * ep.drag_ratio * ep.air_density_kg_m3 * ep.rotor_solidity * ep.disk_area_m2 * v**3
    return blade + induced + parasite


def dominates(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b)) and a != tuple(b)


def slow_fronts(keys) -> list[list[int]]:
    """O(n^2) peeling classifier: repeatedly remove the non-dominated set."""
    keys = [tuple(k) for k in keys]
    remaining = list(range(len(keys)))
    fronts = []
    while remaining:
        level = [
            i
            for i in remaining
            if not any(
                dominates(keys[j], keys[i]) and keys[j] != keys[i] for j in remaining if j != i
            )
        ]
        # equal vectors never dominate each other, keep them in one level
        fronts.append(level)
        taken = set(level)
        remaining = [i for i in remaining if i not in taken]
    return fronts
