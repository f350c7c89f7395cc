import hashlib

import numpy as np
import pytest

from qikm.datasets import (
    FILENAMES, DatasetError, DatasetId, DatasetSpec, checksum, dataset_spec, load,
    parse_dataset_id,
)
from qikm.encoding import minmax_fit_transform

IRIS = """5.1,3.5,1.4,0.2,Iris-setosa
4.9,3.0,1.4,0.2,Iris-setosa
7.0,3.2,4.7,1.4,Iris-versicolor
6.3,3.3,6.0,2.5,Iris-virginica

"""

SEEDS = "15.26\t14.84\t0.871\t5.763\t3.312\t2.221\t5.22\t1\n" \
        "14.88\t14.57\t0.8811\t5.554\t3.333\t1.018\t4.956\t\t1\n" \
        "17.63\t15.98\t0.8673\t6.191\t3.561\t4.076\t6.06\t2\n" \
        "11.84\t13.21\t0.8521\t5.175\t2.836\t3.598\t5.044\t3\n"

GLASS = """1,1.52101,13.64,4.49,1.10,71.78,0.06,8.75,0.00,0.00,1
2,1.51761,13.89,3.60,1.36,72.73,0.48,7.83,0.00,0.00,1
3,1.51618,13.53,3.55,1.54,72.99,0.39,7.78,0.00,0.00,2
4,1.51131,13.69,3.20,1.81,72.81,1.76,5.43,1.19,0.00,7
"""

WINE = "1,14.23,1.71,2.43,15.6,127,2.8,3.06,.28,2.29,5.64,1.04,3.92,1065\n" \
       "2,12.37,.94,1.36,10.6,88,1.98,.57,.28,.42,1.95,1.05,1.82,520\n" \
       "3,12.86,1.35,2.32,18,122,1.51,1.25,.21,.94,4.1,.76,1.29,630\n"

ECOLI = """AAT_ECOLI   0.49  0.29  0.48  0.50  0.56  0.24  0.35  cp
ACEA_ECOLI  0.07  0.40  0.48  0.50  0.54  0.35  0.44  cp
AMPH_ECOLI  0.75  0.55  1.00  1.00  0.40  0.47  0.30  imL
EMRA_ECOLI  0.56  0.40  0.48  0.50  0.49  0.37  0.46  imS
YHJX_ECOLI  0.22  0.38  0.48  0.50  0.29  0.74  0.76  im
OMPX_ECOLI  0.74  0.49  0.48  0.50  0.42  0.54  0.36  pp
"""

PENGUINS = """"rowid","species","island","bill_length_mm","bill_depth_mm","flipper_length_mm","body_mass_g","sex","year"
"1","Adelie","Torgersen",39.1,18.7,181,3750,"male",2007
"2","Adelie","Torgersen",39.5,17.4,186,3800,"female",2007
"4","Adelie","Torgersen",NA,NA,NA,NA,NA,2007
"5","Adelie","Biscoe",36.7,19.3,193,3450,NA,2007
"6","Gentoo","Biscoe",46.1,13.2,211,4500,"female",2007
"7","Chinstrap","Dream",46.5,17.9,192,3500,"female",2007
"""

WHOLESALE = """Channel,Region,Fresh,Milk,Grocery,Frozen,Detergents_Paper,Delicassen
2,3,12669,9656,7561,214,2674,1338
2,3,7057,9810,9568,1762,3293,1776
1,3,13265,1196,4221,6404,507,1788
"""

ALGERIAN = """Bejaia Region Dataset 
day,month,year,Temperature, RH, Ws,Rain ,FFMC,DMC,DC,ISI,BUI,FWI,Classes  
01,06,2012,29,57,18,0,65.7,3.4,7.6,1.3,3.4,0.5,not fire   
02,06,2012,29,61,13,1.3,64.4,4.1,7.6,1,3.9,0.4,not fire   
06,06,2012,31,67,14,0,82.6,5.8,22.2,3.1,7,2.5,fire   
,,,,,,,,,,,,,
Sidi-Bel Abbes Region Dataset
day,month,year,Temperature, RH, Ws,Rain ,FFMC,DMC,DC,ISI,BUI,FWI,Classes  
01,06,2012,32,71,12,0.7,57.1,2.5,8.2,0.6,2.8,0.2,not fire   
"""


def write(tmp_path, did, text):
    p = tmp_path / FILENAMES[did]
    p.write_text(text)
    return p


def spec_for(did, path, n, m, k):
    return DatasetSpec(did, path, n, m, k)


@pytest.mark.parametrize("did,text,shape,counts", [
    (DatasetId.IRIS, IRIS, (4, 4, 3), [2, 1, 1]),
    (DatasetId.SEEDS, SEEDS, (4, 7, 3), [2, 1, 1]),
    (DatasetId.GLASS, GLASS, (4, 9, 3), [2, 1, 1]),
    (DatasetId.WINE, WINE, (3, 13, 3), [1, 1, 1]),
    (DatasetId.ECOLI, ECOLI, (4, 7, 3), [2, 1, 1]),
    (DatasetId.PENGUINS, PENGUINS, (4, 5, 3), [1, 1, 2]),
    (DatasetId.WHOLESALE, WHOLESALE, (3, 6, 2), [1, 2]),
    (DatasetId.ALGERIAN_FIRES, ALGERIAN, (3, 10, 2), [1, 2]),
], ids=lambda v: v.value if isinstance(v, DatasetId) else "")
def test_fixture_formats(tmp_path, did, text, shape, counts):
    path = write(tmp_path, did, text)
    raw = load(spec_for(did, path, *shape))
    assert raw.rows.shape == shape[:2]
    np.testing.assert_array_equal(np.bincount(raw.labels), counts)
    assert sorted(set(raw.labels.tolist())) == list(range(shape[2]))


def test_fixture_column_choices(tmp_path):
    g = load(spec_for(DatasetId.GLASS, write(tmp_path, DatasetId.GLASS, GLASS), 4, 9, 3))
    assert g.rows[0, 0] == 1.52101 and g.feature_names[0] == "RI"
    w = load(spec_for(DatasetId.WINE, write(tmp_path, DatasetId.WINE, WINE), 3, 13, 3))
    assert w.rows[0, 0] == 14.23 and w.rows[0, -1] == 1065
    p = load(spec_for(DatasetId.PENGUINS, write(tmp_path, DatasetId.PENGUINS, PENGUINS), 4, 5, 3))
    np.testing.assert_array_equal(p.rows[:, 4], [1, 0, 0, 0])
    # islands sorted: Biscoe, Dream, Torgersen
    np.testing.assert_array_equal(p.labels, [2, 2, 0, 1])
    h = load(spec_for(DatasetId.WHOLESALE, write(tmp_path, DatasetId.WHOLESALE, WHOLESALE), 3, 6, 2))
    np.testing.assert_array_equal(h.rows[0], [12669, 9656, 7561, 214, 2674, 1338])
    np.testing.assert_array_equal(h.labels, [1, 1, 0])
    a = load(spec_for(DatasetId.ALGERIAN_FIRES, write(tmp_path, DatasetId.ALGERIAN_FIRES, ALGERIAN), 3, 10, 2))
    np.testing.assert_array_equal(a.rows[0], [29, 57, 18, 0, 65.7, 3.4, 7.6, 1.3, 3.4, 0.5])
    # fire < not fire
    np.testing.assert_array_equal(a.labels, [1, 1, 0])


def test_missing_file_names_path(tmp_path):
    spec = dataset_spec("iris", tmp_path)
    with pytest.raises(DatasetError, match=str(tmp_path)):
        load(spec)
    with pytest.raises(DatasetError):
        checksum(spec)


def test_shape_mismatch_names_dataset_and_shape(tmp_path):
    path = write(tmp_path, DatasetId.IRIS, IRIS)
    with pytest.raises(DatasetError, match=r"iris: observed shape n=4, M=4, classes=3"):
        load(spec_for(DatasetId.IRIS, path, 150, 4, 3))


def test_bad_row_names_line(tmp_path):
    path = write(tmp_path, DatasetId.IRIS, IRIS.replace("4.9,3.0", "4.9,x"))
    with pytest.raises(DatasetError, match=r":2:"):
        load(spec_for(DatasetId.IRIS, path, 4, 4, 3))
    path = write(tmp_path, DatasetId.SEEDS, SEEDS + "1 2 3\n")
    with pytest.raises(DatasetError, match=r":5:"):
        load(spec_for(DatasetId.SEEDS, path, 4, 7, 3))


def test_checksum(tmp_path):
    p = tmp_path / "f.txt"
    p.write_bytes(b"")
    spec = DatasetSpec(DatasetId.IRIS, p, None, 4, 3)
    assert checksum(spec) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
    p.write_bytes(b"abc")
    first = checksum(spec)
    assert first == checksum(spec) == hashlib.sha256(b"abc").hexdigest()
    p.write_bytes(b"abd")
    assert checksum(spec) != first


def test_dataset_names():
    assert parse_dataset_id("Algerian-Fires") is DatasetId.ALGERIAN_FIRES
    with pytest.raises(ValueError):
        parse_dataset_id("mnist")


def test_data_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("QIKM_DATA_DIR", str(tmp_path))
    assert dataset_spec("wine").source_path == tmp_path / "wine.data"


# --- real files, when present ---

EXPECTED = {
    DatasetId.IRIS: (150, 4, 3), DatasetId.WINE: (178, 13, 3), DatasetId.SEEDS: (210, 7, 3),
    DatasetId.GLASS: (214, 9, 6), DatasetId.PENGUINS: (333, 5, 3),
    DatasetId.ALGERIAN_FIRES: (122, 10, 2), DatasetId.WHOLESALE: (440, 6, 2),
    DatasetId.ECOLI: (332, 7, 6),
}


@pytest.mark.parametrize("did", list(DatasetId))
def test_real_file(did, data_dir):
    spec = dataset_spec(did, data_dir)
    if not spec.source_path.exists():
        pytest.skip(f"{spec.source_path} not present")
    raw = load(spec)
    assert (raw.n_samples, raw.n_features, raw.n_classes) == EXPECTED[did]
    assert sorted(set(raw.labels.tolist())) == list(range(EXPECTED[did][2]))
    scaled = minmax_fit_transform(raw)
    assert scaled.rows.min() >= 0 and scaled.rows.max() <= 1
    again = load(spec)
    np.testing.assert_array_equal(raw.rows, again.rows)
    np.testing.assert_array_equal(raw.labels, again.labels)


def test_real_iris_balanced(data_dir):
    spec = dataset_spec("iris", data_dir)
    if not spec.source_path.exists():
        pytest.skip("iris.data not present")
    np.testing.assert_array_equal(np.bincount(load(spec).labels), [50, 50, 50])
