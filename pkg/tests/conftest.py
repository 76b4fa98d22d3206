import pytest

from burchkit import FieldSpec


@pytest.fixture(params=[32003, 0], ids=["F32003", "Q"])
def field(request):
    return FieldSpec.from_char(request.param)
