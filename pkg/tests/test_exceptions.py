"""例外クラスのテスト."""

import pytest

from lorasim.exceptions import (
    CalibrationError,
    ConfigError,
    CrcMismatch,
    DomainError,
    FecFailure,
    FrameDecodeError,
    FramingError,
    HeaderCorrupt,
    LoraSimError,
    MissingEvent,
    OversizePayload,
    ScenarioNotFoundError,
    TransportError,
)


class TestExceptionHierarchy:
    """例外クラスの継承関係を検証する."""

    @pytest.mark.parametrize(
        "cls",
        [
            CalibrationError,
            ConfigError,
            DomainError,
            FramingError,
            FrameDecodeError,
            MissingEvent,
            OversizePayload,
            TransportError,
        ],
    )
    def test_is_lorasim_error(self, cls: type[Exception]) -> None:
        """すべての例外が LoraSimError の派生."""
        assert issubclass(cls, LoraSimError)

    @pytest.mark.parametrize("cls", [HeaderCorrupt, FecFailure, CrcMismatch])
    def test_decode_failures(self, cls: type[Exception]) -> None:
        """受信側で計数する失敗は FrameDecodeError にまとまる."""
        assert issubclass(cls, FrameDecodeError)

    def test_scenario_not_found_is_config_error(self) -> None:
        """ScenarioNotFoundError は ConfigError の派生."""
        assert issubclass(ScenarioNotFoundError, ConfigError)


class TestExceptionAttributes:
    """例外が保持する診断情報."""

    def test_crc_mismatch(self) -> None:
        """CrcMismatch は壊れたペイロードと両 CRC を持つ."""
        exc = CrcMismatch("crc", payload=b"HELLQ", expected=0x1234, actual=0x4321)
        assert exc.payload == b"HELLQ"
        assert (exc.expected, exc.actual) == (0x1234, 0x4321)

    def test_fec_failure_index(self) -> None:
        """FecFailure の既定インデックスは -1."""
        assert FecFailure("fec", index=3).index == 3
        assert FecFailure("fec").index == -1

    def test_scenario_not_found_available(self) -> None:
        """候補一覧の既定は空リスト."""
        exc = ScenarioNotFoundError("missing", ["a", "b"])
        assert exc.available == ["a", "b"]
        assert ScenarioNotFoundError("missing").available == []

    def test_catch_as_base(self) -> None:
        """基底クラスで捕捉できる."""
        with pytest.raises(LoraSimError):
            raise HeaderCorrupt("header")
