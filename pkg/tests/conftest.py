import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

from helpers import make_record_doc


@pytest.fixture
def record_doc():
    return make_record_doc()
