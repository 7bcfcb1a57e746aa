import json

import pytest

import sl2factor


def test_factor_known_matrix_over_q():
    res = sl2factor.factor("Q", "[[7,5],[4,3]]")
    assert res["verified"] is True
    assert res["raw_length"] == len(res["word"]["letters"])
    assert res["word"]["letters"][0]["side"] == "L"
    word = json.dumps(res["word"])
    assert sl2factor.verify("Q", "[[7,5],[4,3]]", word)


def test_verify_rejects_wrong_word():
    word = json.dumps({"letters": [{"side": "U", "param": "1"}]})
    assert sl2factor.verify("Q", "[[1,1],[0,1]]", word)
    assert not sl2factor.verify("Q", "[[1,2],[0,1]]", word)


def test_chain_over_inverted_prime_ring():
    res = sl2factor.chain("Q[1/11]", "4", "7")
    assert res["a"] == "4"
    assert res["b"] == "7"
    assert len(res["q"]) == len(res["r"])
    assert res["r"][-1] == "0"


def test_eval_canonicalize_roundtrip():
    word = json.dumps(
        {
            "letters": [
                {"side": "L", "param": "0"},
                {"side": "U", "param": "1"},
                {"side": "U", "param": "2"},
            ]
        }
    )
    canon = json.loads(sl2factor.canonicalize_json("Q", word))
    assert canon["letters"] == [{"side": "U", "param": "3"}]
    assert sl2factor.eval_word_str("Q", word) == sl2factor.eval_word_str(
        "Q", json.dumps(canon)
    )


def test_fundamental_unit_and_depth():
    assert sl2factor.fundamental_unit("Q(sqrt 2)") == "1+1*w"
    assert sl2factor.recommended_depth("Q(sqrt 2)") == 3
    assert sl2factor.recommended_depth("Q[1/11]") == 3
    assert sl2factor.ring_name("Q(sqrt 5; half)[1/3]") == "Q(sqrt 5; half)[1/3]"


def test_min_word_length_small_case():
    n = sl2factor.min_word_length(
        "Q", "[[0,1],[-1,0]]", ["1", "-1", "2", "-2", "3", "-3"], max_len=4
    )
    assert n == 3


def test_budget_exhaustion_raises():
    # Over Z the only units are +-1, so [[7,5],[4,3]] has no length-2 chain.
    with pytest.raises(RuntimeError):
        sl2factor.factor("Q", "[[7,5],[4,3]]", max_k=2)


def test_rings_without_units_are_rejected():
    with pytest.raises(ValueError):
        sl2factor.factor("Q(sqrt -1)", "[[2,3],[1,2]]")
