import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pyreline.engine import Game
from pyreline.schedule import make_schedule
from pyreline.strategies import make_arsonist, make_builder


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def new_game(schedule_desc, builder, arsonist, seed=0, builder_params=None, arsonist_params=None):
    return Game(
        make_schedule(schedule_desc),
        make_builder(builder, seed, **(builder_params or {})),
        make_arsonist(arsonist, seed, **(arsonist_params or {})),
        seed=seed,
    )
