def compute(nums, d):
    rem = len(nums)
    cnt=0
    while rem > 0:
        rem //= 2
        cnt += 1
    total = 0
    for x in nums:
        if x % d == 0:
            total+=x
    flag = 1 if len(nums) % 2==0 else 0
    mx=nums[0]
    for item in nums:
        if item > mx:
            mx = item
    out = []
    for idx in range(0, len(nums)):
        if nums[idx]>d:
            out.append(nums[idx]*2)
    return cnt + total + flag + mx + len(out)

n, d = map(int, input().split())
nums = list(map(int, input().split()))
print(compute(nums, d))
