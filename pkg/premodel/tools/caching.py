import threading

from cachetools import LRUCache, cached, keys

from ..config import resolve_cache_size
from ..transfer import enumerate_transfer_systems, left_class

transfer_systems_cache = LRUCache(maxsize=resolve_cache_size())
left_classes_cache = LRUCache(maxsize=resolve_cache_size())


def lattice_key(L, **kwargs):
    key = keys.hashkey(L.key)
    return key


@cached(transfer_systems_cache, key=lattice_key, lock=threading.Lock())
def stored_transfer_systems(L, **kwargs):
    return tuple(enumerate_transfer_systems(L, **kwargs))


@cached(left_classes_cache, key=lattice_key, lock=threading.Lock())
def stored_left_classes(L, **kwargs):
    return tuple(left_class(L, R) for R in stored_transfer_systems(L, **kwargs))


def CachedWorkspace(lattice, **kwargs):
    """Initialize a LatticeWorkspace whose enumeration is shared process-wide.

    Transfer systems and their left classes are memoized per lattice in an
    LRU cache sized by :func:`premodel.config.resolve_cache_size`.

    Parameters
    ----------
    lattice : FiniteLattice
        Ambient lattice.
    All additional keyword arguments are passed to the LatticeWorkspace.

    Returns
    -------
    LatticeWorkspace
    """
    from ..workspace import LatticeWorkspace

    return LatticeWorkspace(
        lattice,
        systems=stored_transfer_systems(lattice, max_workers=kwargs.get("max_workers")),
        left_classes=stored_left_classes(lattice, max_workers=kwargs.get("max_workers")),
        **kwargs,
    )
