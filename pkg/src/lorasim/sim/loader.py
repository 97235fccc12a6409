"""ScenarioLoader: シナリオファイルの読み込み."""

from __future__ import annotations

import logging
from pathlib import Path

import yaml

from lorasim._messages import format_error
from lorasim.exceptions import ConfigError, ScenarioNotFoundError
from lorasim.sim.scenario import Scenario
from lorasim.sim.schema import parse_scenario

logger = logging.getLogger(__name__)

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"
SCENARIO_SUFFIXES = (".yaml", ".yml")


class ScenarioLoader:
    """シナリオファイルの読み込み.

    名前指定は ``base_path`` 配下の ``<name>.yaml`` を、パス指定はそのファイルを読む。
    """

    def __init__(self, base_path: str | Path = SCENARIO_DIR) -> None:
        self.base_path = Path(base_path)

    def available(self) -> list[str]:
        """base_path 配下のシナリオ名を返す."""
        if not self.base_path.is_dir():
            return []
        return sorted(
            p.stem for p in self.base_path.iterdir() if p.suffix in SCENARIO_SUFFIXES
        )

    def resolve(self, name_or_path: str | Path) -> Path:
        """シナリオ名またはパスを実ファイルに解決する.

        Raises:
            ScenarioNotFoundError: ファイルが存在しない、または base_path 外を指す場合

        """
        candidate = Path(name_or_path)
        if candidate.suffix in SCENARIO_SUFFIXES and candidate.is_file():
            return candidate
        base_path = self.base_path.resolve()
        for suffix in SCENARIO_SUFFIXES:
            file_path = (base_path / f"{name_or_path}{suffix}").resolve()
            if self._is_valid_path(base_path, file_path):
                return file_path
        raise ScenarioNotFoundError(
            format_error("scenario_not_found", name=str(name_or_path), available=self.available()),
            self.available(),
        )

    def load(self, name_or_path: str | Path) -> Scenario:
        """シナリオを読み込んで検証する.

        Args:
            name_or_path: シナリオ名（例: ``paper-urban-2024``）または YAML ファイルのパス

        Returns:
            検証済みのシナリオ

        Raises:
            ScenarioNotFoundError: シナリオが見つからない場合
            ConfigError: YAML 構文エラーまたはスキーマ違反

        Examples:
            >>> scenario = ScenarioLoader().load("paper-urban-2024")
            >>> scenario.radio.sf
            12

        """
        file_path = self.resolve(name_or_path)
        logger.debug("loading scenario %s", file_path)
        try:
            data = yaml.safe_load(file_path.read_text(encoding="utf-8"))
        except yaml.YAMLError as exc:
            raise ConfigError(
                format_error("scenario_invalid", source=str(file_path), errors=str(exc))
            ) from exc
        return parse_scenario(data, source=str(file_path))

    @staticmethod
    def _is_valid_path(base_path: Path, file_path: Path) -> bool:
        """ファイルパスが有効か（base_path 配下に存在するか）を判定する."""
        if file_path != base_path and base_path not in file_path.parents:
            return False
        return file_path.is_file()


def load_scenario(name_or_path: str | Path) -> Scenario:
    """同梱ディレクトリを起点にシナリオを読み込む."""
    return ScenarioLoader().load(name_or_path)
