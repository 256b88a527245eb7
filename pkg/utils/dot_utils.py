"""
DOT 圖形文字產生工具
"""

from typing import Dict, Iterable, List, Optional


def escape_label(text: str) -> str:
    """跳脫 DOT 字串中的反斜線、雙引號與換行"""
    return text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")


def _attributes(attrs: Dict[str, str]) -> str:
    if not attrs:
        return ""
    parts = [f'{key}="{escape_label(str(value))}"' for key, value in attrs.items()]
    return " [" + ", ".join(parts) + "]"


def node_line(node_id: str, label: str, **attrs: str) -> str:
    return f"  {node_id}{_attributes({'label': label, **attrs})};"


def edge_line(source: str, target: str, **attrs: str) -> str:
    return f"  {source} -> {target}{_attributes(attrs)};"


def digraph(
    name: str,
    nodes: Iterable[str],
    edges: Iterable[str],
    rankdir: Optional[str] = None,
) -> str:
    """組合完整的 digraph 文字"""
    lines: List[str] = [f"digraph {name} {{"]
    if rankdir:
        lines.append(f"  rankdir={rankdir};")
    lines.append('  node [fontsize=10, fontname="Arial"];')
    lines.extend(nodes)
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
