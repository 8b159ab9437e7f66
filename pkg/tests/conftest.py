from functools import lru_cache

from hypothesis import HealthCheck, settings

from capfusion.builders import build_group
from capfusion.structure import enumerate_subgroups

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@lru_cache(maxsize=None)
def grp(name):
    return build_group(name)


@lru_cache(maxsize=None)
def lat(name):
    return enumerate_subgroups(grp(name), cap=1000)
