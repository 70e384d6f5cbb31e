from __future__ import annotations

import pytest

from helpers import bowtie_graph


@pytest.fixture
def bowtie():
    return bowtie_graph()


@pytest.fixture
def two_triangles_shared_vertex():
    return bowtie_graph()
