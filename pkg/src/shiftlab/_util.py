"""Budget accounting and ordered fan-out shared by the enumerators."""

from concurrent.futures import ProcessPoolExecutor

DEFAULT_MAX_NODES = 5_000_000


class BudgetExceeded(RuntimeError):
    """An enumeration visited more search nodes than it was allowed."""

    def __init__(self, bound, what="search"):
        self.bound = bound
        self.what = what
        super().__init__(f"{what} exceeded the node budget of {bound}")


class Budget:
    """Mutable node counter; raises once more than `limit` nodes are spent."""

    __slots__ = ("limit", "used", "what")

    def __init__(self, limit, what="search"):
        self.limit = limit
        self.used = 0
        self.what = what

    def spend(self, n=1):
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(self.limit, self.what)


def run_branches(func, branches, jobs=1, max_nodes=None, what="search"):
    """Evaluate ``func(branch, limit) -> (result, nodes)`` for every branch.

    Results come back in branch order. The run fails iff the total node
    count exceeds `max_nodes`, so the outcome does not depend on `jobs`.
    """
    branches = list(branches)
    if jobs is None or jobs <= 1 or len(branches) <= 1:
        out = []
        used = 0
        for b in branches:
            remaining = None if max_nodes is None else max_nodes - used
            if remaining is not None and remaining < 0:
                raise BudgetExceeded(max_nodes, what)
            res, nodes = func(b, remaining)
            used += nodes
            out.append(res)
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, len(branches))) as ex:
            futs = [ex.submit(func, b, max_nodes) for b in branches]
            pairs = [f.result() for f in futs]
        out = [r for r, _ in pairs]
        used = sum(n for _, n in pairs)
    if max_nodes is not None and used > max_nodes:
        raise BudgetExceeded(max_nodes, what)
    return out, used
