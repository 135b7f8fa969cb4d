import numpy as np
import pandas as pd
import pytest

from assortnet import (
    CategorySchema,
    SynthParams,
    build_ons,
    dcor_oracle,
    generate_frame,
    generate_population,
    parse_config,
    vector_assortativity,
    write_microdata_csv,
)
from assortnet.synth import config_text, occupation_codes


def test_fixed_seed_is_deterministic():
    p = SynthParams(n_persons=500, n_occupations=6, n_industries=4, seed=99)
    assert generate_frame(p).equals(generate_frame(p))
    assert generate_population(p) == generate_population(p)


def test_different_seeds_differ():
    a = generate_frame(SynthParams(n_persons=500, seed=1))
    b = generate_frame(SynthParams(n_persons=500, seed=2))
    assert not a.equals(b)


def test_param_validation():
    with pytest.raises(ValueError):
        SynthParams(segregation=-0.1)
    with pytest.raises(ValueError):
        SynthParams(segregation=1.1)
    with pytest.raises(ValueError):
        SynthParams(n_persons=1)
    with pytest.raises(ValueError):
        SynthParams(n_education_levels=5)
    with pytest.raises(ValueError):
        SynthParams(n_occupations=2, schema=CategorySchema("g", ("a", "b", "c")))
    with pytest.raises(ValueError):
        SynthParams(birth_year_range=(1950, 1940))
    with pytest.raises(ValueError):
        SynthParams(birth_year_range=(1850, 1950))
    with pytest.raises(ValueError):
        SynthParams(n_industries=2, schema=CategorySchema("g", ("a", "b", "c")),
                    disjoint_supports=True)
    with pytest.raises(ValueError):
        SynthParams(concentration=0.0)
    with pytest.raises(ValueError):
        SynthParams(extra_iid_categories=(CategorySchema("group", ("a", "b")),))


def test_frame_layout():
    p = SynthParams(
        n_persons=100,
        n_occupations=5,
        n_industries=3,
        n_education_levels=2,
        seed=3,
        extra_iid_categories=(CategorySchema("gender", ("m", "f")),),
    )
    frame = generate_frame(p)
    assert list(frame.columns) == [
        "person_id", "weight", "birth_year", "occupation_code",
        "industry_code", "education_code", "group", "gender",
    ]
    assert len(frame) == 100
    assert set(frame["education_code"]) <= {"1", "2"}
    assert set(frame["industry_code"]) <= {"A", "B", "C"}
    assert set(frame["occupation_code"]) <= set(occupation_codes(5))
    assert set(frame["gender"]) <= {"m", "f"}
    assert (frame["weight"] == 1.0).all()
    years = frame["birth_year"]
    assert years.between(*p.birth_year_range).all()


def test_occupation_codes_sort_numerically():
    codes = occupation_codes(120)
    assert codes == sorted(codes)
    assert codes[0] == "000" and codes[-1] == "119"
    assert occupation_codes(30)[0] == "00"


def test_records_match_frame():
    p = SynthParams(n_persons=50, n_occupations=4, n_industries=3, seed=12)
    frame = generate_frame(p)
    records = generate_population(p)
    assert len(records) == 50
    r, row = records[7], frame.iloc[7]
    assert r.person_id == row["person_id"]
    assert r.occupation_code == row["occupation_code"]
    assert r.category_values["group"] == row["group"]


def test_fully_independent_label_is_near_parity():
    p = SynthParams(n_persons=30_000, n_occupations=10, n_industries=8,
                    segregation=0.0, seed=5)
    frame = generate_frame(p)
    ons = build_ons(frame, p.schema, min_cell=30)
    assert np.abs(ons.attributes.matrix - 1.0).max() < 0.2
    assert vector_assortativity(ons.adjacency, ons.attributes) <= 0.15


def test_fully_segregated_disjoint_blocks():
    p = SynthParams(n_persons=20_000, n_occupations=9, n_industries=6,
                    segregation=1.0, seed=6, disjoint_supports=True)
    frame = generate_frame(p)
    # every occupation block hosts exactly its own group
    codes = occupation_codes(9)
    blocks = np.array_split(np.arange(9), 3)
    for block, group in zip(blocks, p.schema.groups):
        rows = frame[frame["occupation_code"].isin([codes[i] for i in block])]
        assert set(rows["group"]) == {group}
    ons = build_ons(frame, p.schema, min_cell=30)
    r = vector_assortativity(ons.adjacency, ons.attributes)
    assert r >= 0.9
    assert r == pytest.approx(dcor_oracle(ons.adjacency, ons.attributes), abs=1e-9)


def test_disjoint_supports_disconnect_blocks():
    p = SynthParams(n_persons=20_000, n_occupations=9, n_industries=6,
                    segregation=0.3, seed=7, disjoint_supports=True)
    frame = generate_frame(p)
    ons = build_ons(frame, p.schema, min_cell=30)
    w = ons.edge_weights.weights
    blocks = np.array_split(np.arange(9), 3)
    for bi in range(3):
        for bj in range(bi + 1, 3):
            assert np.all(w[np.ix_(blocks[bi], blocks[bj])] == 0.0)
    for block in blocks:
        off = w[np.ix_(block, block)][~np.eye(len(block), dtype=bool)]
        assert np.all(off > 0.0)


def test_write_microdata_roundtrip(tmp_path):
    p = SynthParams(n_persons=80, n_occupations=4, n_industries=3, seed=4)
    frame = generate_frame(p)
    path = tmp_path / "micro.csv"
    write_microdata_csv(frame, path)
    back = pd.read_csv(path, dtype=str, keep_default_na=False)
    assert list(back.columns) == list(frame.columns)
    assert len(back) == 80


def test_config_text_parses_and_matches():
    p = SynthParams(
        n_persons=100, n_occupations=4, n_industries=3, n_education_levels=3,
        seed=1, extra_iid_categories=(CategorySchema("sector", ("rural", "urban")),),
    )
    cfg = parse_config(config_text(p, min_cell=7))
    assert cfg.min_cell == 7
    assert cfg.education_map == {"1": 1, "2": 2, "3": 3}
    assert list(cfg.categories) == ["group", "sector"]
    assert cfg.categories["sector"].groups == ("rural", "urban")
