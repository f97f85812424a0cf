import pytest

from zerosum.checkpoint import Checkpoint, CheckpointError, CheckpointWriter, atomic_write_text


def test_round_trip():
    ck = Checkpoint("run p=7", 32768, {"verified_cases": 32768, "witness_size.3": 100}, [(1, 2, 3)])
    text = ck.dumps()
    assert text.splitlines()[:3] == ["zerosum-checkpoint 1", "fingerprint run p=7", "cursor 32768"]
    assert Checkpoint.loads(text) == ck


@pytest.mark.parametrize(
    "text",
    [
        "",
        "something else 1\nfingerprint x\ncursor 1\n",
        "zerosum-checkpoint 2\nfingerprint x\ncursor 1\n",
        "zerosum-checkpoint 1\nfingerprint x\ncursor -4\n",
        "zerosum-checkpoint 1\nfingerprint x\ncursor 1\ncounter a\n",
        "zerosum-checkpoint 1\nfingerprint x\ncursor 1\nbogus 3\n",
    ],
)
def test_malformed_files_are_rejected(text):
    with pytest.raises(CheckpointError):
        Checkpoint.loads(text)


def test_writer_refuses_to_go_backwards(tmp_path):
    w = CheckpointWriter(tmp_path / "ck", "fp")
    w.save(Checkpoint("fp", 10))
    with pytest.raises(CheckpointError):
        w.save(Checkpoint("fp", 10))
    with pytest.raises(CheckpointError):
        w.save(Checkpoint("fp", 5))
    w.save(Checkpoint("fp", 11))
    assert Checkpoint.load(tmp_path / "ck").cursor == 11 and w.saves == 2


def test_resume_checks_fingerprint(tmp_path):
    CheckpointWriter(tmp_path / "ck", "a").save(Checkpoint("a", 3))
    assert CheckpointWriter(tmp_path / "ck", "a").resume().cursor == 3
    with pytest.raises(CheckpointError):
        CheckpointWriter(tmp_path / "ck", "b").resume()
    assert CheckpointWriter(tmp_path / "missing", "a").resume() is None
    with pytest.raises(CheckpointError):
        CheckpointWriter(tmp_path / "ck", "a").save(Checkpoint("b", 9))


def test_atomic_write_leaves_no_temporaries(tmp_path):
    target = tmp_path / "out.txt"
    atomic_write_text(target, "one\n")
    atomic_write_text(target, "two\n")
    assert target.read_text() == "two\n"
    assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]
