import json
import math
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import pandas as pd
from loguru import logger
from pydantic import BaseModel


def sanitize_filename(index: str, name: Optional[str] = None) -> str:
    """
    生成合法文件名。index必须，name可选且只允许字母、数字、下划线和连字符。
    文件名格式：name_index 或 index
    """
    if name:
        name = name.strip().replace(" ", "_").replace("=", "")
        name = re.sub(r'[^\w\-.]', '', name)
        if name:
            return f"{name}_{index}"
    return index


def to_serializable(obj: Any) -> Any:
    """pydantic 模型转 dict，NaN/Inf 转为 None，保证 JSON 合法"""
    if isinstance(obj, BaseModel):
        return to_serializable(obj.model_dump(mode='python'))
    elif isinstance(obj, dict):
        return {str(k): to_serializable(v) for k, v in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [to_serializable(i) for i in obj]
    elif isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


class ReportStorage:
    """报告产物的目录与文件命名；CSV 与 JSON 输出均为字节确定的"""

    def __init__(self, base_dir: Union[str, Path]):
        self.base_dir = Path(base_dir)
        self.base_dir.mkdir(parents=True, exist_ok=True)

    def path_for(self, index: str, name: Optional[str], ext: str) -> Path:
        return self.base_dir / f"{sanitize_filename(index, name)}.{ext}"

    def write_csv(self, index: str, rows: Sequence[Dict[str, Any]], columns: List[str], name: Optional[str] = None) -> Path:
        path = self.path_for(index, name, "csv")
        frame = pd.DataFrame(list(rows), columns=columns)
        frame.to_csv(path, index=False, float_format="%.17g", lineterminator="\n")
        logger.debug(f"[Report] wrote {len(frame)} rows to {path}")
        return path

    def write_json(self, index: str, data: Any, name: Optional[str] = None) -> Path:
        path = self.path_for(index, name, "json")
        with open(path, 'w', encoding='utf-8', newline="\n") as f:
            json.dump(to_serializable(data), f, ensure_ascii=False, indent=2, sort_keys=True)
            f.write("\n")
        logger.debug(f"[Report] wrote {path}")
        return path

    def load_json(self, index: str, name: Optional[str] = None) -> Any:
        with open(self.path_for(index, name, "json"), 'r', encoding='utf-8') as f:
            return json.load(f)
