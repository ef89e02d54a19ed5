"""Random-waypoint motion and the unit-disk radio predicate."""

import math
from dataclasses import dataclass
from random import Random


@dataclass
class MotionState:
    x: float
    y: float
    waypoint_x: float
    waypoint_y: float
    speed: float


def init_motion(area_w: float, area_h: float, speed_min: float, speed_max: float,
                rng: Random) -> MotionState:
    return MotionState(
        x=rng.uniform(0.0, area_w),
        y=rng.uniform(0.0, area_h),
        waypoint_x=rng.uniform(0.0, area_w),
        waypoint_y=rng.uniform(0.0, area_h),
        speed=rng.uniform(speed_min, speed_max),
    )


def step_motion(m: MotionState, dt: float, area_w: float, area_h: float,
                speed_min: float, speed_max: float, rng: Random) -> MotionState:
    """Advance toward the waypoint; on arrival draw a fresh waypoint and speed.

    Movement stays on the segment between two in-area points, so positions
    never leave the area and per-step displacement is bounded by speed*dt.
    """
    dx = m.waypoint_x - m.x
    dy = m.waypoint_y - m.y
    dist = math.hypot(dx, dy)
    travel = m.speed * dt
    if travel <= 0.0:
        return m
    if travel >= dist:
        m.x = m.waypoint_x
        m.y = m.waypoint_y
        m.waypoint_x = rng.uniform(0.0, area_w)
        m.waypoint_y = rng.uniform(0.0, area_h)
        m.speed = rng.uniform(speed_min, speed_max)
    else:
        m.x += dx / dist * travel
        m.y += dy / dist * travel
    return m


def in_range(ax: float, ay: float, bx: float, by: float, radio_range: float) -> bool:
    """Unit-disk connectivity, boundary inclusive."""
    dx = ax - bx
    dy = ay - by
    return dx * dx + dy * dy <= radio_range * radio_range
