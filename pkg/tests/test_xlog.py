from nhbot.evaluation.xlog import parse_xlogfile_line, read_xlogfile

LINE = (
    "version=3.6.6:points=5300:deathdnum=0:deathlev=4:maxlvl=5:hp=-2:maxhp=44"
    ":deaths=1:deathdate=20211030:birthdate=20211030:uid=1000"
    ":role=Val:race=Hum:gender=Fem:align=Law:name=agent"
    ":death=killed by a jackal, while fainted from lack of food"
    ":conduct=0x1000:turns=8123:achieve=0x0:realtime=900:starttime=0:endtime=900"
)


def test_parse_single_line():
    entry = parse_xlogfile_line(LINE)
    assert entry.points == 5300
    assert entry.deathlev == 4
    assert entry.maxlvl == 5
    assert entry.turns == 8123
    assert entry.role == "Val"
    assert entry.death == "killed by a jackal, while fainted from lack of food"
    assert entry.raw["version"] == "3.6.6"


def test_read_file_skips_blank_lines(tmp_path):
    path = tmp_path / "xlogfile"
    path.write_text(LINE + "\n\n" + LINE + "\n")
    entries = read_xlogfile(str(path))
    assert len(entries) == 2
    assert entries[0].points == entries[1].points == 5300


def test_xlog_overrides_end_screen_fields():
    from nhbot.evaluation.xlog import apply_xlog_overrides
    from test_metrics import record

    records = [record(score=10, death="a newt"), record(score=20)]
    entries = [parse_xlogfile_line(LINE)]
    overridden = apply_xlog_overrides(records, entries)
    assert overridden == 1
    assert records[0].score == 5300
    assert records[0].death == "a jackal"
    assert records[0].cause == "fainted from lack of food"
    assert records[0].max_dungeon_level == 5
    assert records[1].score == 20  # beyond the common prefix: untouched
