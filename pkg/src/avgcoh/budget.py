"""Optional computation step budget, set from the environment by the CLI.

Coarse-grained: elimination pivots and bracket-evaluation combinations each
cost one step.  No budget set means no accounting at all.
"""


class BudgetExceeded(Exception):
    pass


_limit = None
_used = 0


def set_limit(limit):
    global _limit, _used
    _limit = limit
    _used = 0


def spend(n=1):
    global _used
    if _limit is None:
        return
    _used += n
    if _used > _limit:
        raise BudgetExceeded("step budget of %d exhausted" % _limit)
