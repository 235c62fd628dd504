from sqlalchemy import Column, Integer, String, Text, UniqueConstraint

from app.database import Base


class JackFunctionRecord(Base):
    __tablename__ = "jack_functions"
    __table_args__ = (UniqueConstraint("lam", "mu", "mode"),)

    id = Column(Integer, primary_key=True, index=True)
    lam = Column(String, index=True)
    mu = Column(String, index=True)
    mode = Column(String, index=True)
    eigenvalue = Column(String)
    payload = Column(Text)
