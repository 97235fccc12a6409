"""16x2 キャラクタ LCD の描画."""

from __future__ import annotations

LCD_COLUMNS = 16
LCD_ROWS = 2


def render_lcd(text: str) -> tuple[str, str]:
    """テキストを 2 行 16 桁に割り付ける.

    0〜15 文字目を 1 行目、16〜31 文字目を 2 行目に置き、それ以降は切り捨てる。
    短い行は空白で埋め、ASCII 以外の文字と制御文字は ``?`` に置き換える。

    Examples:
        >>> render_lcd("HI")
        ('HI              ', '                ')

    """
    shown = "".join(ch if 32 <= ord(ch) < 127 else "?" for ch in text[: LCD_COLUMNS * LCD_ROWS])
    return (
        shown[:LCD_COLUMNS].ljust(LCD_COLUMNS),
        shown[LCD_COLUMNS:].ljust(LCD_COLUMNS),
    )


def format_lcd(rows: tuple[str, str]) -> str:
    """LCD の 2 行を枠付きの ASCII アートにする."""
    border = "+" + "-" * LCD_COLUMNS + "+"
    return "\n".join([border, *(f"|{row}|" for row in rows), border])
