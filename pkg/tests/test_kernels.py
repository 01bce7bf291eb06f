import pytest

from detmoments import _pykernels, kernels

try:
    from detmoments import _ckernels
except ImportError:
    _ckernels = None

needs_compiled = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def test_backend_reports_something():
    assert kernels.backend_name() in ("compiled", "pure-python")


def test_histogram_totals_cover_state_space():
    hist = _pykernels.matrix_power_histogram((1, -1), 3)
    assert sum(hist.values()) == 2**9
    hist = _pykernels.matrix_power_histogram((1, -1), 4, fix_first=True)
    assert sum(hist.values()) == 2**9


def test_single_state_edge_case():
    hist = _pykernels.matrix_power_histogram((1, -1), 1, fix_first=True)
    assert hist == {(1, 0): 1}


@needs_compiled
@pytest.mark.parametrize("permanent", (False, True))
@pytest.mark.parametrize("n", (1, 2, 3))
def test_matrix_histogram_parity_pm1(n, permanent):
    py = _pykernels.matrix_power_histogram((1, -1), n, permanent=permanent)
    cy = _ckernels.matrix_power_histogram((1, -1), n, permanent=permanent)
    assert py == cy


@needs_compiled
def test_matrix_histogram_parity_scaled_atoms():
    py = _pykernels.matrix_power_histogram((4, -1), 3)
    cy = _ckernels.matrix_power_histogram((4, -1), 3)
    assert py == cy
    py = _pykernels.matrix_power_histogram((2, 0, -2), 2, permanent=True)
    cy = _ckernels.matrix_power_histogram((2, 0, -2), 2, permanent=True)
    assert py == cy


@needs_compiled
def test_matrix_histogram_parity_fix_first():
    py = _pykernels.matrix_power_histogram((1, -1), 4, fix_first=True, permanent=True)
    cy = _ckernels.matrix_power_histogram((1, -1), 4, fix_first=True, permanent=True)
    assert py == cy


def test_prefix_partition_merges_to_full_run():
    full = _pykernels.matrix_power_histogram((1, -1), 3)
    parts = [
        _pykernels.matrix_power_histogram((1, -1), 3, prefix=(i, j))
        for i in range(2)
        for j in range(2)
    ]
    assert kernels.merge_histograms(parts) == full


@needs_compiled
def test_prefix_parity():
    for prefix in ((), (1,), (0, 1, 1)):
        py = _pykernels.matrix_power_histogram((1, -1), 3, prefix=prefix)
        cy = _ckernels.matrix_power_histogram((1, -1), 3, prefix=prefix)
        assert py == cy


def test_prefix_validation():
    with pytest.raises(ValueError):
        _pykernels.matrix_power_histogram((1, -1), 2, prefix=(0,) * 5)
    with pytest.raises(ValueError):
        _pykernels.matrix_power_histogram((1, -1), 2, prefix=(7,))


@needs_compiled
@pytest.mark.parametrize("allow_three", (False, True))
@pytest.mark.parametrize("n", (1, 2, 3))
def test_table_histogram_parity(n, allow_three):
    py = _pykernels.table_type_histogram(n, allow_three=allow_three)
    cy = _ckernels.table_type_histogram(n, allow_three=allow_three)
    assert py == cy


@needs_compiled
@pytest.mark.slow
def test_table_histogram_parity_n4():
    py = _pykernels.table_type_histogram(4, allow_three=True)
    cy = _ckernels.table_type_histogram(4, allow_three=True)
    assert py == cy


def test_dispatcher_routes_oversized_values_to_pure_python():
    # entries this large overflow 64-bit determinants; the dispatcher must
    # fall back to exact Python integers and still match the direct pure run
    big = 1 << 40
    via_dispatch = kernels.matrix_power_histogram((big, -big), 2)
    direct = _pykernels.matrix_power_histogram((big, -big), 2)
    assert via_dispatch == direct
    assert any(abs(k[0]) == 2 * big * big for k in via_dispatch)


def test_table_kernel_rejects_large_n():
    with pytest.raises(ValueError):
        _pykernels.table_type_histogram(5)
    if _ckernels is not None:
        with pytest.raises(ValueError):
            _ckernels.table_type_histogram(5)
