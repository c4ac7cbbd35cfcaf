import logging

import pandas as pd

from .base import InputError
from .config import resolve_max_workers
from .orders import (
    OrderKind,
    PairKind,
    cc_join,
    closed_form_count,
    enumerate_structures,
    order_poset,
)
from .transfer import chain_length, enumerate_transfer_systems, left_class

logger = logging.getLogger(__name__)


class LatticeWorkspace(object):
    """Everything computed about one lattice, shared between operations.

    The transfer systems, their left classes, the three order matrices and
    the structure lists are computed on first use and kept. To instantiate:

    .. code:: python

        ws = LatticeWorkspace(chain(3), max_workers=4)
        ws.systems              # canonical enumeration of Tr(L)
        ws.order("cc")          # PosetRelation over ws.systems
        ws.structures("model")  # list of StructurePair

    Parameters
    ----------
    lattice : FiniteLattice
        Ambient lattice.
    max_workers : int or None, optional
        Worker threads for sweeps. If None, uses
        :func:`premodel.config.resolve_max_workers`.
    systems : sequence of TransferSystem, optional
        A precomputed canonical enumeration of the lattice.
    left_classes : sequence of MorphismClass, optional
        Left classes matching ``systems``.
    """

    def __init__(self, lattice, max_workers=None, systems=None, left_classes=None):
        self._lattice = lattice
        self._max_workers = resolve_max_workers(max_workers)
        self._systems = list(systems) if systems is not None else None
        self._left_classes = list(left_classes) if left_classes is not None else None
        self._reset_derived()

    def _reset_derived(self):
        self._index = None
        self._orders = {}
        self._structures = {}

    @property
    def lattice(self):
        return self._lattice

    @property
    def max_workers(self):
        return self._max_workers

    @property
    def systems(self):
        if self._systems is None:
            self._systems = enumerate_transfer_systems(
                self.lattice, max_workers=self.max_workers
            )
        return self._systems

    @property
    def left_classes(self):
        if self._left_classes is None:
            self._left_classes = [left_class(self.lattice, R) for R in self.systems]
        return self._left_classes

    def index_of(self, R):
        """Canonical index of a transfer system of this lattice"""
        if self._index is None:
            self._index = {S.key: i for i, S in enumerate(self.systems)}
        try:
            return self._index[R.key]
        except KeyError:
            raise InputError("transfer system does not belong to this lattice")

    def order(self, kind):
        kind = OrderKind.parse(kind)
        if kind not in self._orders:
            self._orders[kind] = order_poset(
                self.lattice,
                kind,
                systems=self.systems,
                left_classes=self.left_classes,
                max_workers=self.max_workers,
            )
        return self._orders[kind]

    def structures(self, kind):
        kind = PairKind.parse(kind)
        if kind not in self._structures:
            self._structures[kind] = enumerate_structures(
                self.lattice,
                kind,
                systems=self.systems,
                left_classes=self.left_classes,
                max_workers=self.max_workers,
            )
        return self._structures[kind]

    def cc_join(self, R1, R2):
        return cc_join(
            self.lattice, R1, R2, systems=self.systems, left_classes=self.left_classes
        )

    def count_check(self, kinds=None):
        """Enumerated counts against closed forms, for a chain

        Parameters
        ----------
        kinds : list of str or PairKind, optional
            Defaults to all four kinds.

        Returns
        -------
        pandas.DataFrame
            One row per kind with columns ``kind``, ``enumerated``,
            ``closed_form`` and ``verdict`` ('MATCH' or 'MISMATCH').
        """
        n = chain_length(self.lattice)
        kinds = list(PairKind) if kinds is None else [PairKind.parse(k) for k in kinds]
        rows = []
        for kind in kinds:
            found = len(self.structures(kind))
            expected = closed_form_count(n, kind)
            rows.append(
                {
                    "kind": kind.value,
                    "enumerated": found,
                    "closed_form": expected,
                    "verdict": "MATCH" if found == expected else "MISMATCH",
                }
            )
            if found != expected:
                logger.warning(f"{kind.value} on chain({n}): enumerated {found}, closed form {expected}")
        return pd.DataFrame(rows, columns=["kind", "enumerated", "closed_form", "verdict"])
