* reduction procedure over the inverse-denominator basis
* do not redefine these symbols elsewhere
#include apartreducesymbols.h

#procedure apartreduce(EXPR)
repeat;
#include apartreducerules.h
endrepeat;
.sort
#endprocedure
