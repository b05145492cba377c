from pathlib import Path

import pytest

SAMPLES = Path(__file__).resolve().parent.parent / "docs" / "sample"

TINY_TEXT = """\
Hops and malt and hops again. The brewer boils wort with hops.
Yeast eats sugar; yeast sleeps. Malt is sweet, hops are bitter.
A lager rests cold. A stout is dark. The brewer tastes the beer.
Beer beer beer. Foam on the glass, foam on the keg, malt in the mash.
"""


@pytest.fixture(scope="session")
def sample_dir():
    return SAMPLES


@pytest.fixture()
def tiny_input(tmp_path):
    path = tmp_path / "tiny.txt"
    path.write_text(TINY_TEXT, encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def toy_vec():
    return SAMPLES / "toy.vec"
