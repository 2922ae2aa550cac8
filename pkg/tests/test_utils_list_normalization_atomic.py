from dimerresponse.utils.normalize_lists import normalize_str_list


def test_output_selector_strings():
    assert normalize_str_list(None) == []
    assert normalize_str_list("sigma_sc") == ["sigma_sc"]
    assert normalize_str_list("sigma_sc,ret_rate,  sigma_abs:coll") == [
        "sigma_sc",
        "ret_rate",
        "sigma_abs:coll",
    ]
    assert normalize_str_list("sigma_sc; sigma_abs;sigma_ext") == [
        "sigma_sc",
        "sigma_abs",
        "sigma_ext",
    ]
    assert normalize_str_list('"ret_rate"') == ["ret_rate"]
    assert normalize_str_list(["", "  ", "semiclassical"]) == ["semiclassical"]


def test_output_selectors_fold_case_and_dedupe():
    assert normalize_str_list([" SIGMA_SC ", "ret_rate", "sigma_sc"], lowercase=True) == [
        "sigma_sc",
        "ret_rate",
    ]
    assert normalize_str_list(["'Sigma_Ext'", "`RET_RATE`", "sigma_ext"], lowercase=True) == [
        "sigma_ext",
        "ret_rate",
    ]


def test_selector_part_separator_is_tightened():
    assert normalize_str_list("sigma_abs : coll, gamma0_rate :single") == [
        "sigma_abs:coll",
        "gamma0_rate:single",
    ]
    assert normalize_str_list(["sigma_ext:total", "sigma_ext : total"]) == ["sigma_ext:total"]


def test_selector_json_arrays():
    assert normalize_str_list('["sigma_sc", "sigma_ext:total"]') == [
        "sigma_sc",
        "sigma_ext:total",
    ]
    assert normalize_str_list('`["Sigma_SC","ret_rate"]`', lowercase=True) == [
        "sigma_sc",
        "ret_rate",
    ]
    assert normalize_str_list(['["sigma_sc", "sigma_abs"]', "ret_rate"]) == [
        "sigma_sc",
        "sigma_abs",
        "ret_rate",
    ]
    assert normalize_str_list("[not json") == ["[not json"]


def test_check_filters_keep_case():
    assert normalize_str_list(("oracle_W2", "oracle_W9", "oracle_W2")) == [
        "oracle_W2",
        "oracle_W9",
    ]
    assert normalize_str_list(["oracle_W12,decoupling"]) == ["oracle_W12", "decoupling"]
    assert normalize_str_list([1, 2.5]) == ["1", "2.5"]
