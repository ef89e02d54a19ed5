"""Destination-sequenced distance-vector routing, simplified.

Every node keeps a full table of (next_hop, hop metric, destination
sequence number). Once per routing interval each active node bumps its own
even sequence number by two and broadcasts its whole table; receivers
adopt an advertised route only if it carries a newer sequence number, or
the same number with a strictly better metric. No triggered updates and no
settling-time damping: networks of this size converge within a few rounds.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

# advertisement rows are (destination, seq, metric)
Advertisement = List[Tuple[str, int, int]]


@dataclass
class RouteEntry:
    next_hop: str
    metric: int
    seq: int
    install_time: float


class RouteTable:
    def __init__(self, owner: str, now: float = 0.0):
        self.owner = owner
        self.own_seq = 0
        self.entries: Dict[str, RouteEntry] = {
            owner: RouteEntry(next_hop=owner, metric=0, seq=0, install_time=now)
        }

    def advertise(self, now: float) -> Advertisement:
        """Bump the owner's sequence number and dump the full table."""
        self.own_seq += 2
        own = self.entries[self.owner]
        own.seq = self.own_seq
        own.install_time = now
        return [(dest, e.seq, e.metric) for dest, e in self.entries.items()]

    def handle_update(self, advertisement: Advertisement, sender: str, now: float):
        """Merge a neighbour's table dump received from `sender`."""
        entries = self.entries
        for dest, seq, metric in advertisement:
            if dest == self.owner:
                continue
            candidate_metric = metric + 1
            cur = entries.get(dest)
            if cur is None or seq > cur.seq or (
                    seq == cur.seq and candidate_metric < cur.metric):
                entries[dest] = RouteEntry(
                    next_hop=sender, metric=candidate_metric, seq=seq,
                    install_time=now)

    def next_hop(self, dest: str) -> Optional[str]:
        entry = self.entries.get(dest)
        return entry.next_hop if entry is not None else None

    def metric(self, dest: str) -> Optional[int]:
        entry = self.entries.get(dest)
        return entry.metric if entry is not None else None

    def purge_node(self, node_id: str):
        """Drop the node as a destination and every route through it."""
        self.entries = {
            dest: e for dest, e in self.entries.items()
            if dest != node_id and e.next_hop != node_id
        }


def dsdv_round(tables: Dict[str, RouteTable], receivers: Dict[str, Iterable[str]],
               now: float):
    """One synchronized routing round: everyone advertises the state it had
    at the start of the round, then all merges are applied. Keeps results
    independent of node processing order."""
    ads = {nid: tables[nid].advertise(now) for nid in tables}
    for sender, ad in ads.items():
        for receiver in receivers.get(sender, ()):
            tables[receiver].handle_update(ad, sender, now)
