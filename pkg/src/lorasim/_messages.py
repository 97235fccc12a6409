"""エラーメッセージの整形."""

from __future__ import annotations

from typing import Any

from lorasim import config

_MESSAGES: dict[str, dict[str, str]] = {
    "ja": {
        "sf_out_of_range": "SF は 7〜12 の範囲で指定してください",
        "cr_out_of_range": "CR インデックスは 1〜4 の範囲で指定してください",
        "bw_unsupported": "未対応の帯域幅です",
        "preamble_too_short": "プリアンブルは 4 シンボル以上必要です",
        "ldro_required": "シンボル長が 16 ms を超えるため LDRO が必須です",
        "payload_too_large": "ペイロードが 255 バイトを超えています",
        "value_out_of_range": "値が範囲外です",
        "ragged_buffer": "IQ バッファ長がシンボル長の整数倍ではありません",
        "sf_mismatch": "SymbolBlock と RadioConfig の SF が一致しません",
        "header_missing": "ヘッダを読み取るだけのシンボルがありません",
        "header_checksum": "ヘッダチェックサムが一致しません",
        "header_field": "ヘッダのフィールド値が不正です",
        "header_truncated": "ヘッダが示す長さに対してシンボルが不足しています",
        "header_fec": "ヘッダの符号語を訂正できません",
        "implicit_length": "暗黙ヘッダモードではペイロード長の指定が必要です",
        "fec_uncorrectable": "符号語を訂正できません",
        "fec_parity": "パリティ不一致を検出しました",
        "crc_mismatch": "ペイロード CRC が一致しません",
        "distance_below_d0": "距離が基準距離 d0 より短いです",
        "sf_not_in_table": "SNR しきい値表に SF がありません",
        "latency_missing": "レイテンシ計算用のイベントがありません",
        "latency_negative": "イベントの時刻順序が逆転しています",
        "latency_kind": "レイテンシ計算に使えないイベント種別です",
        "trials_too_few": "試行回数は 1000 以上必要です",
        "not_monotone": "しきい値表が SF に対して単調減少になっていません",
        "scenario_not_found": "シナリオが見つかりません",
        "scenario_invalid": "シナリオ定義が不正です",
        "time_reversed": "時刻が逆行しています",
        "write_key_invalid": "write key は 16 文字の英数字である必要があります",
        "field_too_long": "フィールド値が 255 文字を超えています",
        "transport_failed": "テレメトリ送信に失敗しました",
    },
    "en": {
        "sf_out_of_range": "SF must be within 7..12",
        "cr_out_of_range": "CR index must be within 1..4",
        "bw_unsupported": "Unsupported bandwidth",
        "preamble_too_short": "Preamble must be at least 4 symbols",
        "ldro_required": "LDRO is mandatory when the symbol duration exceeds 16 ms",
        "payload_too_large": "Payload exceeds 255 bytes",
        "value_out_of_range": "Value out of range",
        "ragged_buffer": "IQ buffer length is not a whole number of symbols",
        "sf_mismatch": "SymbolBlock SF does not match RadioConfig",
        "header_missing": "Not enough symbols to read the header",
        "header_checksum": "Header checksum mismatch",
        "header_field": "Invalid header field value",
        "header_truncated": "Fewer symbols than the header announces",
        "header_fec": "Uncorrectable header codeword",
        "implicit_length": "Implicit header mode requires the payload length",
        "fec_uncorrectable": "Uncorrectable codeword",
        "fec_parity": "Parity mismatch detected",
        "crc_mismatch": "Payload CRC mismatch",
        "distance_below_d0": "Distance is shorter than the reference distance d0",
        "sf_not_in_table": "SF missing from the SNR threshold table",
        "latency_missing": "Latency event is missing",
        "latency_negative": "Event timestamps are out of order",
        "latency_kind": "Event kind cannot be used for latency",
        "trials_too_few": "At least 1000 trials are required",
        "not_monotone": "Threshold table is not strictly decreasing in SF",
        "scenario_not_found": "Scenario not found",
        "scenario_invalid": "Invalid scenario definition",
        "time_reversed": "Time went backwards",
        "write_key_invalid": "Write key must be 16 alphanumeric characters",
        "field_too_long": "Field value exceeds 255 characters",
        "transport_failed": "Telemetry transport failed",
    },
}


def format_error(key: str, **detail: Any) -> str:
    """エラーメッセージを整形する.

    Args:
        key: メッセージキー
        **detail: メッセージ末尾に ``name=value`` 形式で付与する詳細

    Returns:
        ``config.ERROR_MESSAGE_LANGUAGE`` に従ったメッセージ

    """
    lang = config.ERROR_MESSAGE_LANGUAGE
    msg = _MESSAGES.get(lang, _MESSAGES["ja"]).get(key, key)
    if detail:
        pairs = " ".join(f"{name}={value!r}" for name, value in detail.items())
        msg = f"{msg}: {pairs}"
    return msg
