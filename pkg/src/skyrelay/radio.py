"""Analytic channel, interference, SINR, rate and capacity evaluation.

All functions are pure.  Indices are 0-based throughout: ``assignment[m]``
is the UAV index serving relayed pair ``m``, ``uav_channel[n]`` and
``direct_channel[k]`` are channel indices in ``0..U-1``.

The per-link scalar operations spell out each formula term by term and are
the reference surface; :func:`link_rates` is a vectorized equivalent used
on the hot path (solver objective evaluation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scenario import ChannelParams, ScenarioConfig


class RadioError(ValueError):
    """Raised on degenerate geometry (coincident points) or bad indices."""


@dataclass(eq=False)
class Placement:
    """One concrete deployment: UAV states plus assignment and channels."""

    uav_xyz: np.ndarray  # (N, 3) m
    uav_tx_w: np.ndarray  # (N,) W
    assignment: np.ndarray  # (M,) int, UAV index per relayed pair
    uav_channel: np.ndarray  # (N,) int
    direct_channel: np.ndarray  # (K,) int

    @property
    def n_uavs(self) -> int:
        return len(self.uav_xyz)

    def served_counts(self) -> np.ndarray:
        """Number of relayed pairs served by each UAV."""
        return np.bincount(self.assignment, minlength=self.n_uavs)


def path_loss_a2g(wd_xyz, uav_xyz, ch: ChannelParams) -> float:
    """Air-to-ground path loss in dB (elevation-angle LoS/NLoS blend)."""
    dx = wd_xyz[0] - uav_xyz[0]
    dy = wd_xyz[1] - uav_xyz[1]
    dz = wd_xyz[2] - uav_xyz[2]
    d = math.sqrt(dx * dx + dy * dy + dz * dz)
    if d == 0.0:
        raise RadioError("coincident WD and UAV positions")
    theta_deg = math.degrees(math.asin(uav_xyz[2] / d))
    los_term = (ch.eta_los - ch.eta_nlos) / (
        1.0 + ch.a * math.exp(-ch.b * (theta_deg - ch.a))
    )
    fspl = 20.0 * math.log10(4.0 * math.pi * ch.carrier_hz * d / ch.light_speed_m_s)
    return los_term + fspl + ch.eta_nlos


def gain_a2g(wd_xyz, uav_xyz, ch: ChannelParams) -> float:
    """Linear air-to-ground power gain."""
    return 10.0 ** (-path_loss_a2g(wd_xyz, uav_xyz, ch) / 10.0)


def gain_g2g(xy1, xy2, ch: ChannelParams) -> float:
    """Linear ground-to-ground power gain (reference-distance LoS model)."""
    d = math.hypot(xy1[0] - xy2[0], xy1[1] - xy2[1])
    if d == 0.0:
        raise RadioError("coincident ground positions")
    return ch.beta0 * d ** (-ch.alpha)


def _check_indices(pl: Placement, cfg: ScenarioConfig) -> None:
    if len(pl.assignment) != cfg.m_pairs:
        raise RadioError("assignment length != number of relayed pairs")
    if len(pl.direct_channel) != cfg.k_pairs:
        raise RadioError("direct_channel length != number of direct pairs")
    if pl.n_uavs and (pl.assignment.min() < 0 or pl.assignment.max() >= pl.n_uavs):
        raise RadioError("assignment references a non-existent UAV")


def _swd3(pair) -> tuple[float, float, float]:
    return (pair.swd_xy[0], pair.swd_xy[1], 0.0)


def _dwd3(pair) -> tuple[float, float, float]:
    return (pair.dwd_xy[0], pair.dwd_xy[1], 0.0)


def exp_interference_at_uav(m: int, n: int, pl: Placement, cfg: ScenarioConfig) -> float:
    """Expected co-channel interference at UAV ``n`` while receiving pair ``m``.

    Co-channel served UAV groups contribute their SWDs' powers diluted by
    the round-robin duty factor; co-channel direct pairs contribute at
    their activity probability.
    """
    _check_indices(pl, cfg)
    if pl.assignment[m] != n:
        raise RadioError(f"pair {m} is not assigned to UAV {n}")
    ch = cfg.channel
    mu = pl.served_counts()
    c_n = pl.uav_channel[n]
    uav_n = pl.uav_xyz[n]
    total = 0.0
    for n_star in range(pl.n_uavs):
        if n_star == n or pl.uav_channel[n_star] != c_n or mu[n_star] == 0:
            continue
        for w in np.flatnonzero(pl.assignment == n_star):
            pair = cfg.relayed_pairs[w]
            total += pair.tx_power_w * gain_a2g(_swd3(pair), uav_n, ch) / mu[n_star]
    for k, pair in enumerate(cfg.direct_pairs):
        if pl.direct_channel[k] == c_n:
            total += pair.activity * pair.tx_power_w * gain_a2g(_swd3(pair), uav_n, ch)
    return total


def exp_sinr_uplink(m: int, n: int, pl: Placement, cfg: ScenarioConfig) -> float:
    """Expected SINR of the SWD-to-UAV leg of relayed pair ``m``."""
    pair = cfg.relayed_pairs[m]
    signal = pair.tx_power_w * gain_a2g(_swd3(pair), pl.uav_xyz[n], cfg.channel)
    return signal / (cfg.channel.noise_w + exp_interference_at_uav(m, n, pl, cfg))


def exp_sinr_downlink(n: int, m: int, pl: Placement, cfg: ScenarioConfig) -> float:
    """Expected SINR of the UAV-to-DWD leg of relayed pair ``m``.

    Cross-UAV interference carries each interfering UAV's own transmit
    power (idle UAVs transmit nothing); direct pairs interfere over the
    ground-to-ground channel.
    """
    _check_indices(pl, cfg)
    if pl.assignment[m] != n:
        raise RadioError(f"pair {m} is not assigned to UAV {n}")
    ch = cfg.channel
    mu = pl.served_counts()
    c_n = pl.uav_channel[n]
    dwd = _dwd3(cfg.relayed_pairs[m])
    interference = 0.0
    for n_star in range(pl.n_uavs):
        if n_star == n or pl.uav_channel[n_star] != c_n or mu[n_star] == 0:
            continue
        interference += pl.uav_tx_w[n_star] * gain_a2g(dwd, pl.uav_xyz[n_star], ch)
    for k, pair in enumerate(cfg.direct_pairs):
        if pl.direct_channel[k] == c_n:
            interference += pair.activity * pair.tx_power_w * gain_g2g(
                pair.swd_xy, dwd[:2], ch
            )
    signal = pl.uav_tx_w[n] * gain_a2g(dwd, pl.uav_xyz[n], ch)
    return signal / (ch.noise_w + interference)


def exp_sinr_direct_leg(m: int, pl: Placement, cfg: ScenarioConfig) -> float:
    """Expected SINR of the direct SWD-to-DWD leg of relayed pair ``m``.

    The leg shares the channel of the pair's assigned UAV; interfering
    SWDs of other co-channel UAV groups count with the round-robin duty
    factor, all over the ground-to-ground channel.
    """
    _check_indices(pl, cfg)
    ch = cfg.channel
    n = pl.assignment[m]
    mu = pl.served_counts()
    c_n = pl.uav_channel[n]
    pair_m = cfg.relayed_pairs[m]
    dwd = pair_m.dwd_xy
    interference = 0.0
    for n_star in range(pl.n_uavs):
        if n_star == n or pl.uav_channel[n_star] != c_n or mu[n_star] == 0:
            continue
        for w in np.flatnonzero(pl.assignment == n_star):
            pair_w = cfg.relayed_pairs[w]
            interference += (
                pair_w.tx_power_w * gain_g2g(pair_w.swd_xy, dwd, ch) / mu[n_star]
            )
    for k, pair in enumerate(cfg.direct_pairs):
        if pl.direct_channel[k] == c_n:
            interference += pair.activity * pair.tx_power_w * gain_g2g(
                pair.swd_xy, dwd, ch
            )
    signal = pair_m.tx_power_w * gain_g2g(pair_m.swd_xy, dwd, ch)
    return signal / (ch.noise_w + interference)


def link_rate(m: int, n: int, pl: Placement, cfg: ScenarioConfig) -> float:
    """Expected amplify-and-forward rate of pair ``m`` through UAV ``n`` (bps).

    Zero whenever the pair is not assigned to ``n``; the bandwidth is split
    by the half-duplex factor and the UAV's round-robin share.
    """
    _check_indices(pl, cfg)
    if pl.assignment[m] != n:
        return 0.0
    mu_n = int(pl.served_counts()[n])
    g_direct = exp_sinr_direct_leg(m, pl, cfg)
    g_up = exp_sinr_uplink(m, n, pl, cfg)
    g_down = exp_sinr_downlink(n, m, pl, cfg)
    combined = 1.0 + g_direct + g_up * g_down / (1.0 + g_up + g_down)
    return cfg.channel.bandwidth_hz / (2.0 * mu_n) * math.log2(combined)


def _a2g_gain_matrix(points_xy: np.ndarray, uav_xyz: np.ndarray, ch: ChannelParams) -> np.ndarray:
    """Gains from ground points (q, 2) to UAVs (N, 3); result (q, N)."""
    dx = points_xy[:, 0][:, None] - uav_xyz[None, :, 0]
    dy = points_xy[:, 1][:, None] - uav_xyz[None, :, 1]
    z = uav_xyz[None, :, 2]
    d = np.sqrt(dx * dx + dy * dy + z * z)
    theta_deg = np.degrees(np.arcsin(z / d))
    los_term = (ch.eta_los - ch.eta_nlos) / (1.0 + ch.a * np.exp(-ch.b * (theta_deg - ch.a)))
    fspl = 20.0 * np.log10(4.0 * np.pi * ch.carrier_hz * d / ch.light_speed_m_s)
    return 10.0 ** (-(los_term + fspl + ch.eta_nlos) / 10.0)


def _g2g_gain_matrix(src_xy: np.ndarray, dst_xy: np.ndarray, ch: ChannelParams) -> np.ndarray:
    """Ground gains from sources (q, 2) to destinations (r, 2); result (q, r).

    Coincident source/destination entries (a pair's own SWD at its DWD
    position never occurs in valid scenarios) would divide by zero.
    """
    d = np.hypot(
        src_xy[:, 0][:, None] - dst_xy[None, :, 0],
        src_xy[:, 1][:, None] - dst_xy[None, :, 1],
    )
    return ch.beta0 * d ** (-ch.alpha)


# Ground geometry and ground-to-ground gains depend only on the scenario,
# not the placement, so they are computed once per config.
_scenario_cache: dict[int, tuple] = {}


def _scenario_arrays(cfg: ScenarioConfig):
    cached = _scenario_cache.get(id(cfg))
    if cached is not None and cached[0] is cfg:
        return cached[1]
    swd_rel = np.array([p.swd_xy for p in cfg.relayed_pairs])
    dwd_rel = np.array([p.dwd_xy for p in cfg.relayed_pairs])
    p_rel = np.array([p.tx_power_w for p in cfg.relayed_pairs])
    if cfg.k_pairs:
        swd_dir = np.array([p.swd_xy for p in cfg.direct_pairs])
        pp_dir = np.array([p.activity * p.tx_power_w for p in cfg.direct_pairs])
        gkr = _g2g_gain_matrix(swd_dir, dwd_rel, cfg.channel)
    else:
        swd_dir = np.empty((0, 2))
        pp_dir = np.empty(0)
        gkr = np.empty((0, cfg.m_pairs))
    grr = _g2g_gain_matrix(swd_rel, dwd_rel, cfg.channel)
    arrays = (swd_rel, dwd_rel, p_rel, swd_dir, pp_dir, grr, gkr)
    if len(_scenario_cache) > 64:
        _scenario_cache.clear()
    _scenario_cache[id(cfg)] = (cfg, arrays)
    return arrays


def link_rates(pl: Placement, cfg: ScenarioConfig) -> np.ndarray:
    """Expected rate of every relayed pair through its assigned UAV (bps).

    Vectorized equivalent of ``link_rate(m, assignment[m])`` for all m.
    """
    _check_indices(pl, cfg)
    ch = cfg.channel
    sigma2 = ch.noise_w
    swd_rel, dwd_rel, p_rel, swd_dir, pp_dir, grr, gkr = _scenario_arrays(cfg)
    n_uavs = pl.n_uavs
    assign = pl.assignment
    mu = pl.served_counts()
    transmitting = mu > 0

    m = cfg.m_pairs
    hboth = _a2g_gain_matrix(np.vstack([swd_rel, dwd_rel]), pl.uav_xyz, ch)
    hu = hboth[:m]  # SWD -> UAV, (M, N)
    hd = hboth[m:]  # DWD <- UAV, (M, N)
    one_hot = np.zeros((len(assign), n_uavs))
    one_hot[np.arange(len(assign)), assign] = 1.0

    same_ch_uav = pl.uav_channel[:, None] == pl.uav_channel[None, :]

    # Expected uplink interference is a property of the receiving UAV.
    group_up = one_hot.T @ (p_rel[:, None] * hu)  # (N_tx_group, N_rx)
    with np.errstate(invalid="ignore"):
        group_up = np.where(transmitting[:, None], group_up / np.maximum(mu, 1)[:, None], 0.0)
    up_mask = same_ch_uav & ~np.eye(n_uavs, dtype=bool) & transmitting[:, None]
    i_up_uav = (group_up * up_mask).sum(axis=0)  # (N,)

    if cfg.k_pairs:
        hk = _a2g_gain_matrix(swd_dir, pl.uav_xyz, ch)  # direct SWD -> UAV, (K, N)
        dir_on_uav = pl.direct_channel[:, None] == pl.uav_channel[None, :]  # (K, N)
        i_up_uav = i_up_uav + (pp_dir[:, None] * hk * dir_on_uav).sum(axis=0)
        dir_on_pair = pl.direct_channel[:, None] == pl.uav_channel[assign][None, :]  # (K, M)
        i_dir_ground = (pp_dir[:, None] * gkr * dir_on_pair).sum(axis=0)  # (M,)
    else:
        i_dir_ground = np.zeros(cfg.m_pairs)

    gamma_up = p_rel * hu[np.arange(cfg.m_pairs), assign] / (sigma2 + i_up_uav[assign])

    # Downlink interference at each DWD from co-channel transmitting UAVs.
    dn_mask = same_ch_uav[:, assign] & transmitting[:, None]  # (N, M)
    dn_mask[assign, np.arange(cfg.m_pairs)] = False
    i_dn = ((pl.uav_tx_w[:, None] * hd.T) * dn_mask).sum(axis=0) + i_dir_ground
    gamma_dn = (
        pl.uav_tx_w[assign] * hd[np.arange(cfg.m_pairs), assign] / (sigma2 + i_dn)
    )

    # Direct-leg interference: co-channel UAV groups' SWDs over the ground.
    group_g = one_hot.T @ (p_rel[:, None] * grr)  # (N, M)
    with np.errstate(invalid="ignore"):
        group_g = np.where(transmitting[:, None], group_g / np.maximum(mu, 1)[:, None], 0.0)
    i_leg = (group_g * dn_mask).sum(axis=0) + i_dir_ground
    gamma_direct = p_rel * np.diag(grr) / (sigma2 + i_leg)

    combined = 1.0 + gamma_direct + gamma_up * gamma_dn / (1.0 + gamma_up + gamma_dn)
    return ch.bandwidth_hz / (2.0 * mu[assign]) * np.log2(combined)


def network_capacity(pl: Placement, cfg: ScenarioConfig) -> float:
    """Expected total network capacity (bps): sum of all relayed-link rates."""
    return float(link_rates(pl, cfg).sum())


def direct_only_capacity(
    cfg: ScenarioConfig,
    channel_assignment=None,
    seed: int = 0,
    direct_channels=None,
) -> float:
    """Capacity if every relayed pair transmits SWD-to-DWD with no UAVs (bps).

    Each relayed pair transmits at full duty on its assigned channel,
    interfered by co-channel relayed SWDs (full duty) and co-channel
    direct pairs (at their activity probability).  Channel assignments not
    given explicitly are drawn uniformly from ``seed``.
    """
    ch = cfg.channel
    rng = np.random.default_rng(seed)
    if channel_assignment is None:
        channel_assignment = rng.integers(0, cfg.u_channels, size=cfg.m_pairs)
    if direct_channels is None:
        direct_channels = rng.integers(0, cfg.u_channels, size=cfg.k_pairs)
    channels = np.asarray(channel_assignment)
    direct_channels = np.asarray(direct_channels)
    if len(channels) != cfg.m_pairs:
        raise RadioError("channel_assignment length != number of relayed pairs")
    if cfg.m_pairs and (channels.min() < 0 or channels.max() >= cfg.u_channels):
        raise RadioError("channel_assignment references a non-existent channel")
    total = 0.0
    for m, pair in enumerate(cfg.relayed_pairs):
        interference = 0.0
        for m2, other in enumerate(cfg.relayed_pairs):
            if m2 != m and channels[m2] == channels[m]:
                interference += other.tx_power_w * gain_g2g(other.swd_xy, pair.dwd_xy, ch)
        for dpair, dchan in zip(cfg.direct_pairs, direct_channels):
            if dchan == channels[m]:
                interference += dpair.activity * dpair.tx_power_w * gain_g2g(
                    dpair.swd_xy, pair.dwd_xy, ch
                )
        sinr = (
            pair.tx_power_w
            * gain_g2g(pair.swd_xy, pair.dwd_xy, ch)
            / (ch.noise_w + interference)
        )
        total += ch.bandwidth_hz * math.log2(1.0 + sinr)
    return total


def comm_energy_efficiency(
    capacity: float, pl: Placement | None, cfg: ScenarioConfig, with_uavs: bool
) -> float:
    """Communication energy efficiency in bit/J.

    With UAVs the denominator is the total UAV plus relayed-SWD transmit
    power; without UAVs only the relayed SWDs transmit.
    """
    swd_power = sum(p.tx_power_w for p in cfg.relayed_pairs)
    if with_uavs:
        if pl is None:
            raise RadioError("placement required for the with-UAVs efficiency")
        power = float(np.sum(pl.uav_tx_w)) + swd_power
    else:
        power = swd_power
    if power <= 0.0:
        raise RadioError("total transmit power must be > 0")
    return capacity / power
